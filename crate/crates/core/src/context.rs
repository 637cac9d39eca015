//! Named-variable rings and the text syntax for polynomials.
//!
//! Syntax: terms joined by `+`/`-`, each term a `*`-product of integer
//! coefficients and variable powers, e.g. `3*x^2*y - y^3`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_CHARACTERISTIC};
use crate::monomial::{Monomial, MAX_VARS};
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    names: Vec<String>,
    ring: PolyRing,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(names: &[S], p: u32, order: MonomialOrder) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Input(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::Input(format!("duplicate variable name {n:?}")));
            }
        }
        if names.len() > MAX_VARS - 1 {
            // one slot stays free for the elimination variable
            return Err(Error::Input(format!(
                "at most {} variables are supported",
                MAX_VARS - 1
            )));
        }
        let ring = PolyRing::new(names.len(), PrimeField::new(p)?, order)?;
        Ok(Self { names, ring })
    }

    /// Grevlex over GF(32003).
    pub fn with_vars<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names, DEFAULT_CHARACTERISTIC, MonomialOrder::Grevlex)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        let i = self.names.iter().position(|n| n == name)?;
        Some(Polynomial::var(self.ring, i))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Parser {
            ctx: self,
            s: text.as_bytes(),
            pos: 0,
        }
        .polynomial()
    }

    /// Parses and rejects inhomogeneous input.
    pub fn parse_homogeneous(&self, text: &str) -> Result<Polynomial> {
        let f = self.parse(text)?;
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous(text.trim().to_string()));
        }
        Ok(f)
    }

    pub fn format(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let field = f.ring().field();
        let mut out = String::new();
        for (k, &(m, c)) in f.terms().iter().enumerate() {
            let c = field.symmetric(c);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors: Vec<String> = Vec::new();
            if abs != 1 || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, name) in self.names.iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    ctx: &'a RingContext,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let ring = self.ctx.ring;
        let field = ring.field();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return self.err(format!("expected '+' or '-', found {:?}", c as char)),
            };
            first = false;
            let (m, c) = self.term()?;
            terms.push((m, if neg { field.neg(c) } else { c }));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let field = self.ctx.ring.field();
        let mut exps = vec![0u32; self.ctx.nvars()];
        let mut coeff = 1u32;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = self.integer()?;
                    coeff = field.mul(coeff, (v % field.characteristic() as u64) as u32);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.s.len()
                        && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                    let Some(i) = self.ctx.names.iter().position(|n| n == name) else {
                        self.pos = start;
                        return self.err(format!("unknown variable {name:?}"));
                    };
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                            return self.err("expected exponent after '^'");
                        }
                        let e = self.integer()?;
                        u32::try_from(e)
                            .ok()
                            .filter(|&e| e <= u16::MAX as u32)
                            .map_or_else(|| self.err("exponent too large"), Ok)?
                    } else {
                        1
                    };
                    exps[i] += e;
                    if exps[i] > u16::MAX as u32 {
                        return self.err("exponent too large");
                    }
                }
                Some(c) => return self.err(format!("unexpected {:?}", c as char)),
                None => return self.err("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(&exps)?, coeff))
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("integer too large")
            })
    }
}
