//! Seeded random monomial instances for property and differential tests.

use crate::context::RingContext;
use crate::error::Result;
use crate::ideal::Ideal;
use crate::local::LocalRingModel;
use crate::mixed::ProblemInstance;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::rng::{below, rng};

const NAMES: [&str; 3] = ["x", "y", "z"];

/// A problem over `k[x, y(, z)]` with `Γ = 0`, kept as generator strings so
/// it can be printed as a problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomInstance {
    pub vars: Vec<String>,
    pub j: Vec<String>,
    pub ideals: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug)]
pub struct SampleShape {
    pub max_vars: usize,
    pub max_ideals: usize,
    pub max_degree: u32,
}

impl Default for SampleShape {
    fn default() -> Self {
        SampleShape {
            max_vars: 3,
            max_ideals: 2,
            max_degree: 4,
        }
    }
}

fn random_monomial(r: &mut rand_xoshiro::SplitMix64, nvars: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[below(r, nvars as u64) as usize] += 1;
    }
    Monomial::from_exponents(&e).expect("small exponents")
}

impl RandomInstance {
    /// 2..=max_vars variables, 1..=max_ideals ideals with 1-3 generators
    /// of degree at most `max_degree`, and an m-primary `J` made of pure
    /// powers plus up to two mixed monomials.
    pub fn generate(seed: u64, shape: SampleShape) -> Self {
        let mut r = rng(seed);
        let nvars = 2 + below(&mut r, (shape.max_vars.max(2) - 1) as u64) as usize;
        let s = 1 + below(&mut r, shape.max_ideals.max(1) as u64) as usize;
        let ctx = RingContext::with_vars(&NAMES[..nvars]).expect("fixed names");
        let ring = ctx.ring();
        let show = |m: Monomial| ctx.format(&Polynomial::term(ring, m, 1));
        let deg = |r: &mut rand_xoshiro::SplitMix64| 1 + below(r, shape.max_degree as u64) as u32;

        let mut j: Vec<String> = (0..nvars)
            .map(|v| show(Monomial::var(v, deg(&mut r) as u16)))
            .collect();
        for _ in 0..below(&mut r, 3) {
            let d = deg(&mut r);
            j.push(show(random_monomial(&mut r, nvars, d)));
        }
        let ideals = (0..s)
            .map(|_| {
                (0..1 + below(&mut r, 3))
                    .map(|_| {
                        let d = deg(&mut r);
                        show(random_monomial(&mut r, nvars, d))
                    })
                    .collect()
            })
            .collect();
        RandomInstance {
            vars: NAMES[..nvars].iter().map(|s| s.to_string()).collect(),
            j,
            ideals,
        }
    }

    pub fn context(&self) -> Result<RingContext> {
        RingContext::with_vars(&self.vars)
    }

    pub fn instantiate(&self) -> Result<ProblemInstance> {
        let ctx = self.context()?;
        let j = Ideal::parse(&ctx, &self.j)?;
        let ideals = self
            .ideals
            .iter()
            .map(|g| Ideal::parse(&ctx, g))
            .collect::<Result<Vec<_>>>()?;
        ProblemInstance::new(LocalRingModel::regular(ctx), j, ideals)
    }

    /// The same instance with the first two ideals exchanged.
    pub fn swapped(&self) -> Self {
        let mut out = self.clone();
        if out.ideals.len() >= 2 {
            out.ideals.swap(0, 1);
        }
        out
    }
}

/// 2-3 homogeneous generators of degree 1-3 with 1-3 terms each and random
/// nonzero coefficients.
pub fn random_homogeneous_ideal(ring: PolyRing, seed: u64) -> Vec<Polynomial> {
    let mut r = rng(seed);
    let p = ring.field().characteristic() as u64;
    (0..2 + below(&mut r, 2))
        .map(|_| {
            let d = 1 + below(&mut r, 3) as u32;
            let mut f = Polynomial::zero(ring);
            for _ in 0..1 + below(&mut r, 3) {
                let m = random_monomial(&mut r, ring.nvars(), d);
                f = f.add(&Polynomial::term(ring, m, 1 + below(&mut r, p - 1) as u32));
            }
            if f.is_zero() {
                f = Polynomial::term(ring, random_monomial(&mut r, ring.nvars(), d), 1);
            }
            f
        })
        .collect()
}

/// A seeded permutation of `items`.
pub fn shuffled<T: Clone>(items: &[T], seed: u64) -> Vec<T> {
    let mut r = rng(seed);
    let mut out = items.to_vec();
    for i in (1..out.len()).rev() {
        out.swap(i, below(&mut r, i as u64 + 1) as usize);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible_and_valid() {
        for seed in 0..30 {
            let a = RandomInstance::generate(seed, SampleShape::default());
            assert_eq!(a, RandomInstance::generate(seed, SampleShape::default()));
            assert!((2..=3).contains(&a.vars.len()));
            assert!((1..=2).contains(&a.ideals.len()));
            let p = a.instantiate().unwrap();
            assert!(p.is_monomial());
        }
    }
}
