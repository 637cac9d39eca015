//! Free multigraded extensions `A[X_{i,1..t_i} : i = 1..s]`, where the
//! variables of block `i` have degree `e_i`.
//!
//! Here the Hilbert function factors:
//! `H(n_0; n) = ℓ(J^{n_0}/J^{n_0+1}) · ∏ C(n_i + t_i - 1, t_i - 1)`.
//! A block with `t_i = 0` is allowed and stands for the quotient in which
//! every variable of that block was killed.

use crate::error::{Error, Result};
use crate::fc::DimLedger;
use crate::ideal::Ideal;
use crate::local::{forward_differences, LengthOracle, LocalRingModel};
use crate::mixed::{build_stabilized, mixed_multiplicities, HilbertTable, MixedReport, Route};
use crate::monomial::binomial;

#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    model: LocalRingModel,
    j: Ideal,
    t: Vec<u32>,
    lengths: LengthOracle,
}

impl FreeAlgebra {
    pub fn new(model: LocalRingModel, j: Ideal, t: Vec<u32>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::Input(
                "at least one block of variables is needed".into(),
            ));
        }
        let lengths = model.lengths(&j)?;
        Ok(Self {
            model,
            j,
            t,
            lengths,
        })
    }

    pub fn model(&self) -> &LocalRingModel {
        &self.model
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    /// `d + Σ (t_i - 1)`, meaningful when every block is nonempty.
    pub fn ell_formula(&self) -> Result<Option<u32>> {
        if self.t.contains(&0) {
            return Ok(None);
        }
        let d = self.model.dim()?;
        Ok(Some(
            (d + self.t.iter().map(|&x| x as i32 - 1).sum::<i32>()) as u32,
        ))
    }

    fn block_factor(&self, n: &[u32]) -> i64 {
        self.t
            .iter()
            .zip(n)
            .map(|(&t, &n)| {
                if t == 0 {
                    (n == 0) as i64
                } else {
                    binomial(n as i64 + t as i64 - 1, t as i64 - 1)
                }
            })
            .product()
    }

    fn fiber_lengths(&self, from: u32, count: u32) -> Result<Vec<i64>> {
        let mut u = self.j.power(from)?;
        let mut out = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let ju = self.j.product(&u)?;
            out.push(self.lengths.length_pair(&u, &ju)?);
            u = ju;
        }
        Ok(out)
    }

    pub fn value(&self, n: &[u32]) -> Result<i64> {
        if n.len() != self.t.len() + 1 {
            return Err(Error::ArityMismatch {
                expected: self.t.len() + 1,
                got: n.len(),
            });
        }
        Ok(self.fiber_lengths(n[0], 1)?[0] * self.block_factor(&n[1..]))
    }

    fn grid(&self, base: u32, window: u32) -> Result<Vec<i64>> {
        let side = window as usize + 1;
        let s = self.t.len();
        let fiber = self.fiber_lengths(base, side as u32)?;
        let mut values = Vec::with_capacity(side.pow(s as u32 + 1));
        for idx in 0..side.pow(s as u32 + 1) {
            let mut rest = idx;
            let mut n = vec![0u32; s + 1];
            for slot in n.iter_mut().rev() {
                *slot = base + (rest % side) as u32;
                rest /= side;
            }
            values.push(fiber[(n[0] - base) as usize] * self.block_factor(&n[1..]));
        }
        Ok(values)
    }

    pub fn default_base0(&self) -> u32 {
        2 * self.j.max_degree().unwrap_or(1) + 2
    }

    pub fn table(&self, base0: u32, window: u32) -> Result<HilbertTable> {
        let ell = self.ell_formula()?.ok_or_else(|| {
            Error::Precondition("a block without variables has no Hilbert polynomial".into())
        })?;
        let t = build_stabilized(self.t.len() + 1, ell, base0, window, |b| {
            self.grid(b, window)
        })?;
        if t.degree_plus_one() != ell {
            return Err(Error::Inconsistency(format!(
                "closed-form table has degree {} but the dimension formula predicts {}",
                t.degree_plus_one() as i64 - 1,
                ell - 1
            )));
        }
        Ok(t)
    }

    /// Dimension of `⊕_n J^n S_(n,..,n) / J^{n+1} S_(n,..,n)`: one more
    /// than the degree of the diagonal length function, or 0 if that
    /// function eventually vanishes.
    pub fn diagonal_dim(&self) -> Result<u32> {
        let probe = self.t.iter().sum::<u32>() + self.model.dim()?.max(0) as u32 + 3;
        let base = self.default_base0();
        let diag = |b: u32| -> Result<Vec<i64>> {
            let fiber = self.fiber_lengths(b, probe + 1)?;
            Ok((0..=probe)
                .map(|k| fiber[k as usize] * self.block_factor(&vec![b + k; self.t.len()]))
                .collect())
        };
        let degree = |vals: &[i64]| -> Option<u32> {
            (0..vals.len() as u32).rev().find(|&k| {
                forward_differences(vals, k as usize)
                    .iter()
                    .any(|&v| v != 0)
            })
        };
        let (a, b) = (diag(base)?, diag(base + 1)?);
        if a.iter().all(|&v| v == 0) && b.iter().all(|&v| v == 0) {
            return Ok(0);
        }
        match (degree(&a), degree(&b)) {
            (Some(x), Some(y)) if x == y && x + 1 < probe => Ok(x + 1),
            _ => Err(Error::Inconsistency(
                "diagonal length function did not settle".into(),
            )),
        }
    }

    /// The algebra after killing one variable of block `direction`.
    pub fn quotient_by_variable(&self, direction: usize) -> Result<FreeAlgebra> {
        let mut t = self.t.clone();
        match t.get_mut(direction) {
            Some(x) if *x > 0 => *x -= 1,
            Some(_) => {
                return Err(Error::Precondition(format!(
                    "block {} has no variables left",
                    direction + 1
                )))
            }
            None => return Err(Error::Input(format!("no block {}", direction + 1))),
        }
        Ok(FreeAlgebra { t, ..self.clone() })
    }

    /// Diagonal dimensions after killing one variable of each listed block
    /// in turn, starting with the algebra itself.
    pub fn quotient_ledger(&self, directions: &[usize]) -> Result<DimLedger> {
        let mut cur = self.clone();
        let mut dims = vec![cur.diagonal_dim()? as i32];
        for &i in directions {
            cur = cur.quotient_by_variable(i)?;
            dims.push(cur.diagonal_dim()? as i32);
        }
        Ok(DimLedger { dims })
    }
}

pub fn free_algebra_report(
    algebra: &FreeAlgebra,
    base0: u32,
    window: Option<u32>,
) -> Result<MixedReport> {
    let ell = algebra.ell_formula()?.ok_or_else(|| {
        Error::Precondition("a block without variables has no Hilbert polynomial".into())
    })?;
    let table = algebra.table(base0, window.unwrap_or(ell + 1))?;
    mixed_multiplicities(&table, Route::ClosedForm)
}
