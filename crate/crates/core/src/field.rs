//! Arithmetic in the prime field GF(p).
//!
//! Coefficients are stored as canonical residues `0 <= v < p` in a `u32`;
//! products are formed in `u64`, so any prime below 2^31 works.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::Input(format!(
                "characteristic {p} is not a prime below 2^31"
            )));
        }
        Ok(Self { p })
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i64) as u32)
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn symmetric(self, v: u32) -> i64 {
        if v > self.p / 2 {
            v as i64 - self.p as i64
        } else {
            v as i64
        }
    }

    pub fn elem(self, v: i64) -> FieldElem {
        FieldElem {
            value: self.from_i64(v),
            field: self,
        }
    }
}

/// A single element of GF(p), carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    field: PrimeField,
}

impl FieldElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<FieldElem> {
        self.field.inv(self.value).map(|value| FieldElem {
            value,
            field: self.field,
        })
    }

    fn check(self, other: FieldElem) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        Ok(self.field)
    }

    pub fn try_add(self, other: FieldElem) -> Result<FieldElem> {
        let f = self.check(other)?;
        Ok(FieldElem {
            value: f.add(self.value, other.value),
            field: f,
        })
    }

    pub fn try_mul(self, other: FieldElem) -> Result<FieldElem> {
        let f = self.check(other)?;
        Ok(FieldElem {
            value: f.mul(self.value, other.value),
            field: f,
        })
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn symmetric_representative() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.symmetric(6), -1);
        assert_eq!(f.symmetric(3), 3);
        assert_eq!(f.symmetric(4), -3);
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = PrimeField::new(7).unwrap().elem(3);
        let b = PrimeField::new(11).unwrap().elem(3);
        assert!(matches!(a.try_add(b), Err(Error::ContextMismatch)));
    }

    proptest! {
        #[test]
        fn inverse_cancels(a in 0u32..32003, b in 1u32..32003) {
            let f = PrimeField::new(32003).unwrap();
            let binv = f.inv(b).unwrap();
            prop_assert_eq!(f.mul(b, binv), 1);
            prop_assert_eq!(f.mul(f.mul(a, b), binv), a);
        }

        #[test]
        fn add_sub_roundtrip(a in 0u32..32003, b in 0u32..32003) {
            let f = PrimeField::new(32003).unwrap();
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }
}
