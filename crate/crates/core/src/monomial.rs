//! Exponent vectors.
//!
//! `Monomial` is a fixed-width `Copy` array; entries past the ring's arity
//! are always zero, which keeps every order comparison arity-independent.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported arity, counting the auxiliary elimination variable.
pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::Input(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        let mut m = [0u16; MAX_VARS];
        for (slot, &e) in m.iter_mut().zip(exps) {
            *slot =
                u16::try_from(e).map_err(|_| Error::Input(format!("exponent {e} too large")))?;
        }
        Ok(Monomial(m))
    }

    pub fn var(i: usize, e: u16) -> Self {
        let mut m = [0u16; MAX_VARS];
        m[i] = e;
        Monomial(m)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn to_vec(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0 == [0; MAX_VARS]
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(m)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    #[inline]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        Monomial(m)
    }

    #[inline]
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = (*a).min(b);
        }
        Monomial(m)
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// `self / gcd(self, other)`: the generator of `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = a.saturating_sub(b);
        }
        Monomial(m)
    }

    /// Bitmask of variables with a positive exponent.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Moves every exponent `shift` slots to the right (used to make room
    /// for elimination variables at the front).
    pub fn shifted_right(&self, shift: usize) -> Monomial {
        let mut m = [0u16; MAX_VARS];
        m[shift..].copy_from_slice(&self.0[..MAX_VARS - shift]);
        Monomial(m)
    }

    pub fn shifted_left(&self, shift: usize) -> Monomial {
        let mut m = [0u16; MAX_VARS];
        m[..MAX_VARS - shift].copy_from_slice(&self.0[shift..]);
        Monomial(m)
    }

    pub(crate) fn raw(exps: [u16; MAX_VARS]) -> Self {
        Monomial(exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..last.max(1)])
    }
}

/// Visits every monomial of total degree `degree` in `nvars` variables.
pub fn for_each_of_degree(nvars: usize, degree: u32, mut visit: impl FnMut(Monomial)) {
    fn rec(
        exps: &mut [u16; MAX_VARS],
        pos: usize,
        nvars: usize,
        remaining: u32,
        visit: &mut dyn FnMut(Monomial),
    ) {
        if pos + 1 == nvars {
            exps[pos] = remaining as u16;
            visit(Monomial(*exps));
            exps[pos] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            exps[pos] = e as u16;
            rec(exps, pos + 1, nvars, remaining - e, visit);
        }
        exps[pos] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            visit(Monomial::ONE);
        }
        return;
    }
    let mut exps = [0u16; MAX_VARS];
    rec(&mut exps, 0, nvars, degree, &mut visit);
}

/// Number of monomials of degree `degree` in `nvars` variables.
pub fn count_of_degree(nvars: usize, degree: u32) -> i64 {
    if nvars == 0 {
        return (degree == 0) as i64;
    }
    binomial(degree as i64 + nvars as i64 - 1, nvars as i64 - 1)
}

/// Binomial coefficient with `C(n, k) = 0` outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}
