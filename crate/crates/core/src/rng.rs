//! Seeded randomness for candidate generation.
//!
//! Everything random flows through SplitMix64 so that a run is reproducible
//! from its seed alone.

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Uniform draw from `0..bound` by rejection.
pub fn below(rng: &mut SplitMix64, bound: u64) -> u64 {
    assert!(bound > 0);
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

/// Combines a seed with a tag into an independent-looking seed.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut r = rng(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    r.next_u64()
}

/// `sum c_i g_i` over the generators of exactly `degree`, with each `c_i`
/// uniform in GF(p) minus zero.
pub fn random_homogeneous_combo(gens: &[Polynomial], degree: u32, seed: u64) -> Result<Polynomial> {
    let stratum: Vec<&Polynomial> = gens
        .iter()
        .filter(|g| g.homogeneous_degree() == Some(degree))
        .collect();
    let Some(first) = stratum.first() else {
        return Err(Error::EmptyStratum { degree });
    };
    let ring = first.ring();
    let p = ring.field().characteristic() as u64;
    let mut r = rng(seed);
    let mut acc = Polynomial::zero(ring);
    for g in stratum {
        if g.ring() != ring {
            return Err(Error::ContextMismatch);
        }
        let c = 1 + below(&mut r, p - 1) as u32;
        acc = acc.add(&g.scale(c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::RingContext;

    #[test]
    fn single_generator_stratum_is_a_scalar_multiple() {
        let ctx = RingContext::with_vars(&["x", "y"]).unwrap();
        let gens = [ctx.parse("x^2").unwrap(), ctx.parse("y^3").unwrap()];
        let f = random_homogeneous_combo(&gens, 2, 11).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.monic(), gens[0]);
    }

    #[test]
    fn combination_is_reproducible() {
        let ctx = RingContext::with_vars(&["x", "y"]).unwrap();
        let gens: Vec<_> = ["x^2", "x*y", "y^2"]
            .iter()
            .map(|s| ctx.parse(s).unwrap())
            .collect();
        let a = random_homogeneous_combo(&gens, 2, 99).unwrap();
        let b = random_homogeneous_combo(&gens, 2, 99).unwrap();
        let c = random_homogeneous_combo(&gens, 2, 100).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert_ne!(a, c);
    }

    #[test]
    fn empty_stratum() {
        let ctx = RingContext::with_vars(&["x", "y"]).unwrap();
        let gens = [ctx.parse("x^2").unwrap(), ctx.parse("y^3").unwrap()];
        assert!(matches!(
            random_homogeneous_combo(&gens, 5, 1),
            Err(Error::EmptyStratum { degree: 5 })
        ));
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = rng(3);
        for _ in 0..1000 {
            assert!(below(&mut r, 7) < 7);
        }
    }
}
