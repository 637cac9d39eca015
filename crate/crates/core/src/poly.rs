//! Sparse polynomials over GF(p).

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MAX_VARS};
use crate::order::MonomialOrder;

/// Arity, coefficient field and term order: everything arithmetic needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    nvars: usize,
    field: PrimeField,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(nvars: usize, field: PrimeField, order: MonomialOrder) -> Result<Self> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::Input(format!(
                "arity must be between 1 and {MAX_VARS}, got {nvars}"
            )));
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > nvars {
                return Err(Error::Input(format!(
                    "cannot eliminate {k} of {nvars} variables"
                )));
            }
        }
        Ok(Self {
            nvars,
            field,
            order,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing { order, ..*self }
    }

    /// The same ring with `extra` fresh variables prepended.
    pub(crate) fn extended(&self, extra: usize, order: MonomialOrder) -> Result<PolyRing> {
        PolyRing::new(self.nvars + extra, self.field, order)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }
}

/// A polynomial: nonzero terms sorted strictly decreasing in the ring's order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(ring: PolyRing) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn one(ring: PolyRing) -> Self {
        Self::term(ring, Monomial::ONE, 1)
    }

    pub fn constant(ring: PolyRing, c: i64) -> Self {
        Self::term(ring, Monomial::ONE, ring.field.from_i64(c))
    }

    pub fn term(ring: PolyRing, m: Monomial, c: u32) -> Self {
        let c = c % ring.field.characteristic();
        if c == 0 {
            return Self::zero(ring);
        }
        Polynomial {
            ring,
            terms: vec![(m, c)],
        }
    }

    pub fn var(ring: PolyRing, i: usize) -> Self {
        Self::term(ring, Monomial::var(i, 1), 1)
    }

    /// Builds from arbitrary (possibly repeated, unreduced) terms.
    pub fn from_terms(ring: PolyRing, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let f = ring.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % f.characteristic());
        }
        Self::from_map(ring, acc)
    }

    /// Builds from signed integer coefficients and exponent vectors.
    pub fn from_int_terms(ring: PolyRing, terms: &[(i64, &[u32])]) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            if e.len() != ring.nvars {
                return Err(Error::ArityMismatch {
                    expected: ring.nvars,
                    got: e.len(),
                });
            }
            out.push((Monomial::from_exponents(e)?, ring.field.from_i64(*c)));
        }
        Ok(Self::from_terms(ring, out))
    }

    fn from_map(ring: PolyRing, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring, terms }
    }

    /// Trusts the caller that `terms` is sorted and has no zero coefficients.
    pub(crate) fn from_sorted(ring: PolyRing, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Re-sorts the terms for a different order on the same variables.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        let ring = self.ring.with_order(order);
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring, terms }
    }

    /// Maps into `target` by shifting exponents right by `shift` slots.
    pub(crate) fn embed(&self, target: PolyRing, shift: usize) -> Polynomial {
        Self::from_terms(
            target,
            self.terms.iter().map(|&(m, c)| (m.shifted_right(shift), c)),
        )
    }

    /// Inverse of [`embed`](Self::embed); the first `shift` variables must be absent.
    pub(crate) fn project(&self, target: PolyRing, shift: usize) -> Polynomial {
        Self::from_terms(
            target,
            self.terms.iter().map(|&(m, c)| (m.shifted_left(shift), c)),
        )
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field;
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Self::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, 1)) => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field.inv(c).expect("nonzero")),
        }
    }

    /// `c * m * self`; multiplication by a term preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        if c == 0 {
            return Self::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|&(a, b)| (a.mul(m), f.mul(b, c)))
                .collect(),
        }
    }

    /// `self + c * m * g`, merging sorted term lists.
    pub(crate) fn add_scaled(&self, g: &Polynomial, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        let ring = self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|&(bm, bc)| (bm.mul(m), f.mul(bc, c)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(*a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = f.add(x.1, y.1);
                        if s != 0 {
                            out.push((x.0, s));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        Polynomial { ring, terms: out }
    }

    pub fn add(&self, g: &Polynomial) -> Polynomial {
        self.add_scaled(g, &Monomial::ONE, 1)
    }

    pub fn sub(&self, g: &Polynomial) -> Polynomial {
        self.add_scaled(g, &Monomial::ONE, self.ring.field.neg(1))
    }

    pub fn mul(&self, g: &Polynomial) -> Polynomial {
        if self.is_zero() || g.is_zero() {
            return Self::zero(self.ring);
        }
        if self.terms.len() == 1 {
            return g.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        if g.terms.len() == 1 {
            return self.mul_term(&g.terms[0].0, g.terms[0].1);
        }
        let f = self.ring.field;
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * g.terms.len());
        for &(am, ac) in &self.terms {
            for &(bm, bc) in &g.terms {
                let e = acc.entry(am.mul(&bm)).or_insert(0);
                *e = f.add(*e, f.mul(ac, bc));
            }
        }
        Self::from_map(self.ring, acc)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Self::one(self.ring);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn same_ring(&self, g: &Polynomial) -> Result<()> {
        if self.ring != g.ring {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, g: &Polynomial) -> Result<Polynomial> {
        self.same_ring(g)?;
        Ok(self.add(g))
    }

    pub fn try_sub(&self, g: &Polynomial) -> Result<Polynomial> {
        self.same_ring(g)?;
        Ok(self.sub(g))
    }

    pub fn try_mul(&self, g: &Polynomial) -> Result<Polynomial> {
        self.same_ring(g)?;
        Ok(self.mul(g))
    }

    /// Exact division by a polynomial known to divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        self.same_ring(d)?;
        let (lm, lc) = d
            .terms
            .first()
            .copied()
            .ok_or_else(|| Error::Input("division by zero".into()))?;
        let lc_inv = self.ring.field.inv(lc).expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(&(m, c)) = rem.terms.first() {
            let q = m
                .checked_div(&lm)
                .ok_or_else(|| Error::Inconsistency("inexact polynomial division".into()))?;
            let qc = self.ring.field.mul(c, lc_inv);
            quot.push((q, qc));
            rem = rem.add_scaled(d, &q, self.ring.field.neg(qc));
        }
        Ok(Polynomial::from_sorted(self.ring, quot))
    }
}
