//! Multigraded Hilbert tables and mixed multiplicities.
//!
//! For a family `I_1..I_s` and an `m`-primary `J`, the function
//! `H(n_0,..,n_s) = ℓ(J^{n_0} I^n / J^{n_0+1} I^n)` is evaluated on a cubic
//! grid. Once it is polynomial there, a mixed forward difference of total
//! order `ell - 1` at the base point is exactly the corresponding
//! normalized top coefficient.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::local::{LengthOracle, LocalRingModel};
use crate::monomial::binomial;

/// Base points are doubled up to this value before giving up.
pub const TABLE_BASE_CAP: u32 = 32;

#[derive(Clone, Debug)]
pub struct ProblemInstance {
    model: LocalRingModel,
    j: Ideal,
    ideals: Vec<Ideal>,
    product: Ideal,
    saturation: Ideal,
    ell: u32,
    lengths: LengthOracle,
}

impl ProblemInstance {
    pub fn new(model: LocalRingModel, j: Ideal, ideals: Vec<Ideal>) -> Result<Self> {
        let ctx = model.ctx();
        if ideals.is_empty() {
            return Err(Error::Input("the ideal family is empty".into()));
        }
        j.require_homogeneous(ctx)?;
        for i in &ideals {
            if i.ring() != ctx.ring() {
                return Err(Error::ContextMismatch);
            }
            i.require_homogeneous(ctx)?;
        }
        let lengths = model.lengths(&j)?;
        let mut product = ideals[0].clone();
        for i in &ideals[1..] {
            product = product.product(i)?;
        }
        let saturation = model.gamma().saturate(&product)?;
        if saturation.is_unit()? {
            let gens: Vec<String> = product.gens().iter().map(|g| ctx.format(g)).collect();
            return Err(Error::Nilpotent(format!("({})", gens.join(", "))));
        }
        let ell = saturation.krull_dim_quotient()?;
        if ell <= 0 {
            return Err(Error::Precondition(format!(
                "the quotient by the saturation has dimension {ell}; no Hilbert polynomial to speak of"
            )));
        }
        Ok(Self {
            model,
            j,
            ideals,
            product,
            saturation,
            ell: ell as u32,
            lengths,
        })
    }

    /// The same instance with every ideal forced off the monomial fast
    /// path, so lengths go through Gröbner bases.
    pub fn general_path(&self) -> Result<Self> {
        let ring = self.model.ctx().ring();
        let force = |i: &Ideal| Ideal::new_general(ring, i.gens().to_vec());
        let model = LocalRingModel::new(self.model.ctx().clone(), force(self.model.gamma())?)?;
        let ideals = self.ideals.iter().map(force).collect::<Result<Vec<_>>>()?;
        ProblemInstance::new(model, force(&self.j)?, ideals)
    }

    pub fn model(&self) -> &LocalRingModel {
        &self.model
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn s(&self) -> usize {
        self.ideals.len()
    }

    /// `I = I_1 ··· I_s`.
    pub fn product(&self) -> &Ideal {
        &self.product
    }

    /// `Γ : I^∞`.
    pub fn saturation(&self) -> &Ideal {
        &self.saturation
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn is_monomial(&self) -> bool {
        self.j.is_monomial()
            && self.model.gamma().is_monomial()
            && self.ideals.iter().all(|i| i.is_monomial())
    }

    /// `2 · (max generator degree among J, I_1..I_s) + 2`.
    pub fn default_base0(&self) -> u32 {
        let d = std::iter::once(&self.j)
            .chain(&self.ideals)
            .filter_map(|i| i.max_degree())
            .max()
            .unwrap_or(1);
        2 * d + 2
    }

    pub fn default_window(&self) -> u32 {
        self.ell + 1
    }

    /// `W = I_1^{n_1} ··· I_s^{n_s}`.
    fn family_power(&self, n: &[u32]) -> Result<Ideal> {
        let mut acc = self.ideals[0].power(n[0])?;
        for (i, &e) in self.ideals.iter().zip(n).skip(1) {
            acc = acc.product(&i.power(e)?)?;
        }
        Ok(acc)
    }

    pub fn hilbert_value(&self, n: &[u32]) -> Result<i64> {
        if n.len() != self.s() + 1 {
            return Err(Error::ArityMismatch {
                expected: self.s() + 1,
                got: n.len(),
            });
        }
        let u = self.j.power(n[0])?.product(&self.family_power(&n[1..])?)?;
        self.lengths.length(&u)
    }

    /// Values on `base ..= base + window` along every axis, axis 0 most
    /// significant.
    pub fn evaluate_grid(&self, base: u32, window: u32) -> Result<Vec<i64>> {
        let s = self.s();
        let side = window as usize + 1;
        // powers I_i^{base + k}
        let powers: Vec<Vec<Ideal>> = self
            .ideals
            .iter()
            .map(|i| {
                let mut v = vec![i.power(base)?];
                for _ in 0..window {
                    let next = v.last().unwrap().product(i)?;
                    v.push(next);
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        let jb = self.j.power(base)?;
        let columns: Vec<Vec<i64>> = (0..side.pow(s as u32))
            .into_par_iter()
            .map(|idx| {
                let ks = unflatten(idx, s, side);
                let mut w = powers[0][ks[0]].clone();
                for i in 1..s {
                    w = w.product(&powers[i][ks[i]])?;
                }
                let mut u = jb.product(&w)?;
                let mut col = Vec::with_capacity(side);
                for _ in 0..side {
                    let ju = self.j.product(&u)?;
                    col.push(self.lengths.length_pair(&u, &ju)?);
                    u = ju;
                }
                Ok(col)
            })
            .collect::<Result<_>>()?;
        let mut values = vec![0i64; side.pow(s as u32 + 1)];
        for (idx, col) in columns.into_iter().enumerate() {
            for (k0, v) in col.into_iter().enumerate() {
                values[k0 * side.pow(s as u32) + idx] = v;
            }
        }
        Ok(values)
    }

    /// Evaluates the grid, doubling `base0` until the table stabilizes.
    pub fn build_table(&self, base0: u32, window: u32) -> Result<HilbertTable> {
        build_stabilized(self.s() + 1, self.ell, base0, window, |b| {
            self.evaluate_grid(b, window)
        })
    }
}

fn unflatten(mut idx: usize, axes: usize, side: usize) -> Vec<usize> {
    let mut out = vec![0; axes];
    for slot in out.iter_mut().rev() {
        *slot = idx % side;
        idx /= side;
    }
    out
}

/// Shared doubling loop for every kind of table.
pub fn build_stabilized(
    axes: usize,
    ell: u32,
    base0: u32,
    window: u32,
    mut grid: impl FnMut(u32) -> Result<Vec<i64>>,
) -> Result<HilbertTable> {
    if window < ell {
        return Err(Error::Input(format!(
            "window {window} is too small to see differences of order {ell}"
        )));
    }
    let mut base = base0;
    loop {
        let values = grid(base)?;
        let table = HilbertTable::assemble(vec![base; axes], window, values, ell);
        if table.stabilized {
            return Ok(table);
        }
        let next = (base * 2).max(1);
        if next > TABLE_BASE_CAP {
            return Err(Error::Stabilization(Box::new(table)));
        }
        base = next;
    }
}

/// Exact values on a grid plus the stabilization verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub base: Vec<u32>,
    pub window: u32,
    /// Row-major over `base ..= base + window` per axis, axis 0 first.
    pub values: Vec<i64>,
    pub ell: u32,
    pub stabilized: bool,
}

impl HilbertTable {
    /// Wraps grid values and runs the stabilization test: every order-`ell`
    /// mixed difference inside the grid vanishes, and every order-`ell - 1`
    /// difference is unchanged when the base moves by one along the
    /// diagonal.
    pub fn assemble(base: Vec<u32>, window: u32, values: Vec<i64>, ell: u32) -> Self {
        let mut t = HilbertTable {
            base,
            window,
            values,
            ell,
            stabilized: false,
        };
        t.stabilized = t.check_stabilized();
        t
    }

    pub fn axes(&self) -> usize {
        self.base.len()
    }

    fn side(&self) -> usize {
        self.window as usize + 1
    }

    /// Value at absolute grid coordinates.
    pub fn value(&self, n: &[u32]) -> Option<i64> {
        if n.len() != self.axes() {
            return None;
        }
        let mut idx = 0;
        for (&x, &b) in n.iter().zip(&self.base) {
            if x < b || x > b + self.window {
                return None;
            }
            idx = idx * self.side() + (x - b) as usize;
        }
        Some(self.values[idx])
    }

    /// `Δ^order H` at `base + offset`, if the needed points are in the grid.
    pub fn difference(&self, offset: &[u32], order: &[u32]) -> Option<i64> {
        if offset.iter().zip(order).any(|(&o, &k)| o + k > self.window) {
            return None;
        }
        let axes = self.axes();
        let mut total = 0i64;
        let mut j = vec![0u32; axes];
        loop {
            let mut coeff = 1i64;
            let mut point = Vec::with_capacity(axes);
            let mut parity = 0;
            for i in 0..axes {
                coeff *= binomial(order[i] as i64, j[i] as i64);
                parity += order[i] - j[i];
                point.push(self.base[i] + offset[i] + j[i]);
            }
            let v = self.value(&point)?;
            total += if parity % 2 == 0 {
                coeff * v
            } else {
                -coeff * v
            };
            // odometer over 0..=order
            let mut i = axes;
            loop {
                if i == 0 {
                    return Some(total);
                }
                i -= 1;
                if j[i] < order[i] {
                    j[i] += 1;
                    break;
                }
                j[i] = 0;
            }
        }
    }

    fn check_stabilized(&self) -> bool {
        if self.ell == 0 || self.window < self.ell {
            return false;
        }
        let axes = self.axes();
        for order in compositions(self.ell, axes) {
            for offset in grid_offsets(axes, self.window) {
                if let Some(d) = self.difference(&offset, &order) {
                    if d != 0 {
                        return false;
                    }
                }
            }
        }
        let ones = vec![1u32; axes];
        let zeros = vec![0u32; axes];
        compositions(self.ell - 1, axes).iter().all(|k| {
            match (self.difference(&zeros, k), self.difference(&ones, k)) {
                (Some(a), Some(b)) => a == b,
                (Some(_), None) => true,
                _ => false,
            }
        })
    }

    /// One more than the largest total order of a nonzero mixed difference
    /// at the base point (0 if the table is identically zero).
    pub fn degree_plus_one(&self) -> u32 {
        let zeros = vec![0u32; self.axes()];
        (0..=self.window)
            .rev()
            .find(|&d| {
                compositions(d, self.axes())
                    .iter()
                    .any(|k| self.difference(&zeros, k).is_some_and(|v| v != 0))
            })
            .map_or(0, |d| d + 1)
    }

    /// Every order-`ell` mixed difference in the grid is zero.
    pub fn top_differences_vanish(&self) -> bool {
        compositions(self.ell, self.axes()).iter().all(|k| {
            grid_offsets(self.axes(), self.window)
                .iter()
                .all(|o| self.difference(o, k).is_none_or(|v| v == 0))
        })
    }
}

/// All offsets in `{0..=window}^axes`.
fn grid_offsets(axes: usize, window: u32) -> Vec<Vec<u32>> {
    let side = window as usize + 1;
    (0..side.pow(axes as u32))
        .map(|idx| {
            unflatten(idx, axes, side)
                .into_iter()
                .map(|x| x as u32)
                .collect()
        })
        .collect()
}

/// Vectors of `parts` nonnegative integers summing to `total`, in
/// decreasing lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Which computation produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    DirectTable,
    FcReduction,
    ClosedForm,
}

impl Route {
    pub fn tag(&self) -> &'static str {
        match self {
            Route::DirectTable => "direct-table",
            Route::FcReduction => "fc-reduction",
            Route::ClosedForm => "closed-form",
        }
    }
}

/// Mixed multiplicities of every type `k` with `|k| = ell - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedReport {
    pub ell: u32,
    /// Types in decreasing lexicographic order.
    pub entries: Vec<(Vec<u32>, i64)>,
    pub route: Route,
    pub base: Vec<u32>,
}

impl MixedReport {
    pub fn get(&self, k: &[u32]) -> Option<i64> {
        self.entries.iter().find(|(t, _)| t == k).map(|e| e.1)
    }
}

/// `(k0,k1,...)`, the label used in reports.
pub fn type_label(k: &[u32]) -> String {
    let parts: Vec<String> = k.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Reads every mixed multiplicity off a stabilized table.
pub fn mixed_multiplicities(t: &HilbertTable, route: Route) -> Result<MixedReport> {
    if !t.stabilized {
        return Err(Error::Precondition("the table has not stabilized".into()));
    }
    let zeros = vec![0u32; t.axes()];
    let mut entries = Vec::new();
    for k in compositions(t.ell - 1, t.axes()) {
        let e = t
            .difference(&zeros, &k)
            .ok_or_else(|| Error::Inconsistency("grid too small for the extraction".into()))?;
        if e < 0 {
            return Err(Error::Inconsistency(format!(
                "negative mixed multiplicity {e} of type {}",
                type_label(&k)
            )));
        }
        entries.push((k, e));
    }
    if entries.iter().all(|(_, e)| *e == 0) {
        return Err(Error::Inconsistency(
            "all mixed multiplicities vanish".into(),
        ));
    }
    Ok(MixedReport {
        ell: t.ell,
        entries,
        route,
        base: t.base.clone(),
    })
}

impl fmt::Display for MixedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ell = {}:", self.ell)?;
        for (k, e) in &self.entries {
            write!(f, " e{}={}", type_label(k), e)?;
        }
        Ok(())
    }
}
