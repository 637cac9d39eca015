//! The graded local model `A = k[y]/Γ` localized at the homogeneous maximal
//! ideal, and finite lengths over it.
//!
//! Everything is homogeneous, so lengths of finite-length modules are sums
//! of graded-piece dimensions.

use std::collections::HashSet;

use crate::context::RingContext;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::monomial_ideal::{hf_from_numerator, total_from_numerator, MonomialIdeal};

/// Largest `c` tried when searching for `m^c ⊆ J + Γ`.
pub const MAX_ADIC_BOUND: u32 = 100;
/// Hilbert–Samuel base points are doubled up to this value.
pub const SAMUEL_BASE_CAP: u32 = 64;

#[derive(Clone, Debug)]
pub struct LocalRingModel {
    ctx: RingContext,
    gamma: Ideal,
}

impl LocalRingModel {
    pub fn new(ctx: RingContext, gamma: Ideal) -> Result<Self> {
        if gamma.ring() != ctx.ring() {
            return Err(Error::ContextMismatch);
        }
        gamma.require_homogeneous(&ctx)?;
        if gamma.is_unit()? {
            return Err(Error::Precondition(
                "the defining ideal is the unit ideal".into(),
            ));
        }
        Ok(Self { ctx, gamma })
    }

    /// The regular model `k[y]` itself.
    pub fn regular(ctx: RingContext) -> Self {
        let gamma = Ideal::zero(ctx.ring());
        Self { ctx, gamma }
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn gamma(&self) -> &Ideal {
        &self.gamma
    }

    /// `dim A`.
    pub fn dim(&self) -> Result<i32> {
        self.gamma.krull_dim_quotient()
    }

    /// The model of `A / H`.
    pub fn quotient(&self, h: &Ideal) -> Result<LocalRingModel> {
        LocalRingModel::new(self.ctx.clone(), self.gamma.sum(h)?.reduced()?)
    }

    /// Lifts an ideal of `A` to the ambient ring: `U + Γ`.
    pub fn lift(&self, u: &Ideal) -> Result<Ideal> {
        if self.gamma.is_zero() {
            return Ok(u.clone());
        }
        self.gamma.sum(u)
    }

    pub fn is_m_primary(&self, j: &Ideal) -> Result<bool> {
        j.require_homogeneous(&self.ctx)?;
        Ok(self.lift(j)?.krull_dim_quotient()? == 0)
    }

    /// Least `c` with `m^c ⊆ J + Γ`.
    pub fn adic_bound(&self, j: &Ideal) -> Result<u32> {
        let lifted = self.lift(j)?;
        for c in 0..=MAX_ADIC_BOUND {
            if lifted.quotient_hf(c)? == 0 {
                return Ok(c);
            }
        }
        Err(Error::ComputationLimit(format!(
            "m^c is not inside J for any c <= {MAX_ADIC_BOUND}"
        )))
    }

    /// `ℓ_A(A / U)` for an `m`-primary `U`.
    pub fn colength(&self, u: &Ideal) -> Result<i64> {
        let lifted = self.lift(u)?;
        total_from_numerator(lifted.hilbert_numerator()?, self.ctx.nvars())
            .ok_or_else(|| Error::NotMPrimary(self.describe(u)))
    }

    pub fn lengths(&self, j: &Ideal) -> Result<LengthOracle> {
        if !self.is_m_primary(j)? {
            return Err(Error::NotMPrimary(self.describe(j)));
        }
        let c = self.adic_bound(j)?;
        let jg = self.lift(j)?;
        let standard = match (jg.monomial(), self.gamma.is_monomial()) {
            (Some(m), true) => m.standard_monomials(),
            _ => None,
        };
        Ok(LengthOracle {
            model: self.clone(),
            j: j.clone(),
            c,
            standard,
        })
    }

    /// `ℓ_A(U / JU)`.
    pub fn length_quotient(&self, u: &Ideal, j: &Ideal) -> Result<i64> {
        self.lengths(j)?.length(u)
    }

    /// Dimension and multiplicity of `A/H` with respect to `J`.
    pub fn hilbert_samuel(&self, j: &Ideal, h: &Ideal) -> Result<SamuelData> {
        h.require_homogeneous(&self.ctx)?;
        let q = self.quotient(h)?;
        let d = q.dim()?;
        if !q.is_m_primary(j)? {
            return Err(Error::NotMPrimary(self.describe(j)));
        }
        if d == 0 {
            let mult = q.colength(&Ideal::zero(self.ctx.ring()))?;
            return Ok(SamuelData {
                dim: 0,
                mult,
                base: 0,
            });
        }
        let d = d as u32;
        let oracle = q.lengths(j)?;
        let mut base = d + 2;
        let mut values = Vec::new();
        while base <= SAMUEL_BASE_CAP {
            // values f(base), ..., f(base + d + 2): three D-th differences
            values = Vec::with_capacity(d as usize + 3);
            let mut u = q.gamma.sum(&j.power(base)?)?;
            for _ in 0..d + 3 {
                let ju = q.gamma.sum(&j.product(&u)?)?;
                values.push(oracle.length_pair(&u, &ju)?);
                u = ju;
            }
            let top = forward_differences(&values, d as usize);
            if top.iter().all(|&v| v == 0) {
                let mult = forward_differences(&values, d as usize - 1)[0];
                if mult <= 0 {
                    return Err(Error::Inconsistency(format!(
                        "non-positive multiplicity {mult}"
                    )));
                }
                return Ok(SamuelData {
                    dim: d as i32,
                    mult,
                    base,
                });
            }
            base *= 2;
        }
        Err(Error::SamuelStabilization {
            base: base / 2,
            values,
        })
    }

    fn describe(&self, i: &Ideal) -> String {
        let gens: Vec<String> = i.gens().iter().map(|g| self.ctx.format(g)).collect();
        format!("({})", gens.join(", "))
    }
}

/// Result of [`LocalRingModel::hilbert_samuel`]; `base` is the certified
/// base point (0 in dimension zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamuelData {
    pub dim: i32,
    pub mult: i64,
    pub base: u32,
}

/// Order-`k` forward differences of `values`.
pub fn forward_differences(values: &[i64], k: usize) -> Vec<i64> {
    let mut v = values.to_vec();
    for _ in 0..k {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    v
}

/// Length computations against a fixed `m`-primary `J`.
#[derive(Clone, Debug)]
pub struct LengthOracle {
    model: LocalRingModel,
    j: Ideal,
    c: u32,
    standard: Option<Vec<Monomial>>,
}

impl LengthOracle {
    pub fn adic_bound(&self) -> u32 {
        self.c
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    pub fn length(&self, u: &Ideal) -> Result<i64> {
        let ju = self.j.product(u)?;
        self.length_pair(u, &ju)
    }

    /// `ℓ(U / V)` where `V = JU` was computed by the caller.
    pub fn length_pair(&self, u: &Ideal, ju: &Ideal) -> Result<i64> {
        if self.standard.is_some() && u.is_monomial() && ju.is_monomial() {
            return self.length_staircase(u, ju);
        }
        self.length_graded(u, ju, 0)
    }

    /// Degree-by-degree dimension count, summing up to `g + c - 1 + extra`.
    pub fn length_graded(&self, u: &Ideal, ju: &Ideal, extra: u32) -> Result<i64> {
        let ctx = self.model.ctx();
        u.require_homogeneous(ctx)?;
        if u.is_zero() {
            return Ok(0);
        }
        let ul = self.model.lift(u)?;
        let jul = self.model.lift(ju)?;
        let n = ctx.nvars();
        let lo = u.min_degree().unwrap_or(0);
        let g = ul.max_degree().unwrap_or(0);
        let hi = (g + self.c + extra).max(1) - 1;
        let (nu, nju) = (ul.hilbert_numerator()?, jul.hilbert_numerator()?);
        let mut total = 0;
        for e in lo..=hi {
            total += hf_from_numerator(nju, n, e) - hf_from_numerator(nu, n, e);
        }
        Ok(total)
    }

    /// Counts monomials of `U` outside `JU + Γ` directly (all-monomial
    /// inputs only).
    pub fn length_staircase(&self, u: &Ideal, ju: &Ideal) -> Result<i64> {
        let (Some(std), Some(um), Some(jum), Some(gm)) = (
            &self.standard,
            u.monomial(),
            ju.monomial(),
            self.model.gamma.monomial(),
        ) else {
            return Err(Error::Precondition(
                "staircase counting needs monomial ideals".into(),
            ));
        };
        let lower = jum.sum(gm);
        Ok(staircase_count(um, &lower, std))
    }
}

/// `#{ g·m : g ∈ gens(U), m standard } \ lower`: every monomial of `U`
/// outside `JU` has this shape.
fn staircase_count(u: &MonomialIdeal, lower: &MonomialIdeal, standard: &[Monomial]) -> i64 {
    let mut seen: HashSet<Monomial> = HashSet::new();
    for g in u.gens() {
        for m in standard {
            let c = g.mul(m);
            if !lower.contains(&c) {
                seen.insert(c);
            }
        }
    }
    seen.len() as i64
}
