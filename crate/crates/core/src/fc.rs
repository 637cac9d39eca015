//! Weak-(FC) elements and sequences: randomized candidates, exact checks,
//! and the comparison of the direct table with the reduction route.
//!
//! Conditions, for `x` in `I_i`, inside the current model `A = R/Γ`:
//! - FC1: `(x) ∩ I^n = x · I^{n - e_i}` on a grid of large `n`;
//! - FC2: `(Γ : x) ⊆ (Γ : I^∞)`;
//! - FC3: `dim A/((x) : I^∞) = dim A/(0 : I^∞) - 1`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::local::LocalRingModel;
use crate::mixed::{compositions, mixed_multiplicities, HilbertTable, ProblemInstance, Route};
use crate::monomial::for_each_of_degree;
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::Polynomial;
use crate::rng::{derive_seed, random_homogeneous_combo};

/// Dimensions `dim A_j / (0 : I^∞)` after each quotient, starting with
/// the original model; `-1` once the product becomes nilpotent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DimLedger {
    pub dims: Vec<i32>,
}

impl DimLedger {
    pub fn drops(&self) -> Vec<i32> {
        self.dims.windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// Steps whose drop is not exactly one.
    pub fn non_unit_drops(&self) -> Vec<usize> {
        self.drops()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 1)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FcChecks {
    pub fc1: bool,
    pub fc2: bool,
    /// `None` when FC3 was not evaluated.
    pub fc3: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FcCandidate {
    pub element: Polynomial,
    /// 1-based index into the family; 0 would be `J`.
    pub direction: usize,
    pub seed: u64,
    pub checks: FcChecks,
}

#[derive(Clone, Debug)]
pub struct FcSequenceRecord {
    pub k: Vec<u32>,
    pub elements: Vec<FcCandidate>,
    /// The model after each accepted element; `models[0]` is the input.
    pub models: Vec<LocalRingModel>,
    pub ledger: DimLedger,
    pub maximal: bool,
}

impl FcSequenceRecord {
    /// `dim A / ((x_1..x_t) : I^∞)`.
    pub fn final_dim(&self) -> i32 {
        *self.ledger.dims.last().expect("ledger starts nonempty")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub retries: u32,
    /// Base of the FC1 grid; the instance default when `None`.
    pub fc1_base: Option<u32>,
    pub check_fc3: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            retries: 4,
            fc1_base: None,
            check_fc3: true,
        }
    }
}

fn trimmed(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn combine(a: &[i64], b: &[i64], sign: i64) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += sign * y;
    }
    trimmed(out)
}

fn require_member(a: &LocalRingModel, source: &Ideal, x: &Polynomial) -> Result<()> {
    if !x.is_homogeneous() {
        return Err(Error::NotHomogeneous(a.ctx().format(x)));
    }
    if !a.lift(source)?.contains(x)? {
        return Err(Error::NotMember(a.ctx().format(x)));
    }
    Ok(())
}

/// FC1 for `x ∈ family[i]` on the grid `{base..=base+window}^{|family|}`.
pub fn check_fc1(
    a: &LocalRingModel,
    family: &[Ideal],
    x: &Polynomial,
    i: usize,
    base: u32,
    window: u32,
) -> Result<bool> {
    if window < 1 {
        return Err(Error::Input("the FC1 grid needs window >= 1".into()));
    }
    if base < 1 {
        return Err(Error::Input("the FC1 grid needs base >= 1".into()));
    }
    let source = family
        .get(i)
        .ok_or_else(|| Error::Input(format!("no ideal at index {i}")))?;
    require_member(a, source, x)?;
    if x.is_zero() || a.gamma().contains(x)? {
        // zero in A: (0) ∩ P = 0 = 0 · P'
        return Ok(true);
    }
    let side = window as usize + 1;
    let axes = family.len();
    // powers family[j]^(base - 1 + k), k = 0..=side
    let powers: Vec<Vec<Ideal>> = family
        .iter()
        .map(|f| {
            let mut v = vec![f.power(base - 1)?];
            for _ in 0..side {
                let next = v.last().unwrap().product(f)?;
                v.push(next);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let xi = Ideal::principal(x);
    let x_gamma = a.lift(&xi)?;
    let x_gamma_num = trimmed(x_gamma.hilbert_numerator()?.to_vec());
    let all_monomial =
        x.is_monomial() && a.gamma().is_monomial() && family.iter().all(|f| f.is_monomial());

    let point = |idx: usize| -> Result<bool> {
        let mut rest = idx;
        let mut ks = vec![0usize; axes];
        for slot in ks.iter_mut().rev() {
            *slot = rest % side;
            rest /= side;
        }
        // exponents n_j = base + ks[j], so family[j]^{n_j} = powers[j][ks[j] + 1]
        let pick = |drop: bool| -> Result<Ideal> {
            let mut acc: Option<Ideal> = None;
            for j in 0..axes {
                let e = ks[j] + 1 - (drop && j == i) as usize;
                let p = &powers[j][e];
                acc = Some(match acc {
                    None => p.clone(),
                    Some(q) => q.product(p)?,
                });
            }
            Ok(acc.expect("nonempty family"))
        };
        let p = pick(false)?;
        let p_lower = pick(true)?;
        if all_monomial {
            let (Some(pm), Some(lm), Some(xm), Some(gm)) = (
                p.monomial(),
                p_lower.monomial(),
                x_gamma.monomial(),
                a.gamma().monomial(),
            ) else {
                unreachable!("monomial inputs stay monomial");
            };
            let lhs: MonomialIdeal = xm.intersect(&pm.sum(gm));
            let rhs = lm.mul_monomial(&x.leading_monomial().unwrap()).sum(gm);
            return Ok(lhs == rhs);
        }
        // rhs ⊆ lhs always holds, so equal Hilbert series decide equality
        let p_gamma = a.lift(&p)?;
        let both = x_gamma.sum(&p)?;
        let lhs = combine(
            &combine(&x_gamma_num, p_gamma.hilbert_numerator()?, 1),
            both.hilbert_numerator()?,
            -1,
        );
        let rhs = if a.gamma().is_zero() {
            // x is a nonzerodivisor: R/(xP') has numerator 1 - t^d (1 - N(R/P'))
            let d = x.homogeneous_degree().expect("homogeneous") as usize;
            let np = p_lower.hilbert_numerator()?;
            let mut shifted = vec![0i64; d + np.len()];
            shifted[d] = 1;
            for (k, &c) in np.iter().enumerate() {
                shifted[d + k] -= c;
            }
            combine(&[1], &shifted, -1)
        } else {
            trimmed(a.lift(&p_lower.mul_poly(x)?)?.hilbert_numerator()?.to_vec())
        };
        Ok(lhs == rhs)
    };
    // the corner is cheapest and usually decides a failing candidate
    if !point(0)? {
        return Ok(false);
    }
    match (1..side.pow(axes as u32))
        .into_par_iter()
        .map(point)
        .find_any(|r| !matches!(r, Ok(true)))
    {
        None => Ok(true),
        Some(r) => r,
    }
}

/// FC2: `(Γ : x) ⊆ (Γ : I^∞)`.
pub fn check_fc2(a: &LocalRingModel, i: &Ideal, x: &Polynomial) -> Result<bool> {
    if !x.is_homogeneous() {
        return Err(Error::NotHomogeneous(a.ctx().format(x)));
    }
    let gamma = a.gamma();
    if gamma.is_zero() {
        return Ok(true);
    }
    let ann = gamma.colon(&Ideal::principal(x))?;
    let sat = gamma.saturate(i)?;
    sat.contains_ideal(&ann)
}

/// FC3: `dim A/((x) : I^∞) = dim A/(0 : I^∞) - 1`, for `x` in `source`.
pub fn check_fc3(a: &LocalRingModel, i: &Ideal, x: &Polynomial, source: &Ideal) -> Result<bool> {
    require_member(a, source, x)?;
    let before = a.gamma().saturate(i)?.krull_dim_quotient()?;
    let after = a.gamma().sum_poly(x)?.saturate(i)?.krull_dim_quotient()?;
    Ok(after == before - 1)
}

/// Spanning sets of the lowest two degree components of the image of
/// `ideal` in `A`: every surviving generator times every monomial that
/// lifts it to that degree.
fn strata(a: &LocalRingModel, ideal: &Ideal) -> Result<Vec<(u32, Vec<Polynomial>)>> {
    let mut alive = Vec::new();
    for g in ideal.gens() {
        if !a.gamma().contains(g)? {
            alive.push(g.clone());
        }
    }
    let Some(low) = alive.iter().filter_map(|g| g.homogeneous_degree()).min() else {
        return Ok(Vec::new());
    };
    let ring = ideal.ring();
    let mut out = Vec::new();
    for d in [low, low + 1] {
        let mut span: Vec<Polynomial> = Vec::new();
        for g in &alive {
            let gd = g.homogeneous_degree().expect("homogeneous family");
            if gd > d {
                continue;
            }
            for_each_of_degree(ring.nvars(), d - gd, |m| {
                let f = g.mul_term(&m, 1).monic();
                if !span.contains(&f) {
                    span.push(f);
                }
            });
        }
        out.push((d, span));
    }
    Ok(out)
}

/// The family `(J, I_1, ..., I_s)` used by FC1.
fn full_family(p: &ProblemInstance) -> Vec<Ideal> {
    std::iter::once(p.j().clone())
        .chain(p.ideals().iter().cloned())
        .collect()
}

/// Greedy randomized weak-(FC) sequence with `k_i` elements from `I_i`.
pub fn build_sequence(
    p: &ProblemInstance,
    k: &[u32],
    seed: u64,
    opts: &SearchOptions,
) -> Result<FcSequenceRecord> {
    if k.len() != p.s() + 1 {
        return Err(Error::ArityMismatch {
            expected: p.s() + 1,
            got: k.len(),
        });
    }
    let t: u32 = k[1..].iter().sum();
    if t > p.ell() {
        return Err(Error::Precondition(format!(
            "a sequence of length {t} exceeds ell = {}",
            p.ell()
        )));
    }
    let base = opts.fc1_base.unwrap_or_else(|| p.default_base0()).max(1);
    let family = full_family(p);
    let product = p.product();
    let mut record = FcSequenceRecord {
        k: k.to_vec(),
        elements: Vec::new(),
        models: vec![p.model().clone()],
        ledger: DimLedger {
            dims: vec![p.ell() as i32],
        },
        maximal: false,
    };
    let mut step = 0u64;
    for (dir, &count) in k.iter().enumerate().skip(1) {
        for _ in 0..count {
            step += 1;
            let model = record.models.last().unwrap().clone();
            let layers = strata(&model, &p.ideals()[dir - 1])?;
            let mut accepted = None;
            let mut last_reason = String::from("no generator survives in the quotient");
            // lowest stratum first, then one fallback stratum
            'strata: for (deg, gens) in layers.iter().take(2) {
                for attempt in 0..opts.retries.max(1) {
                    let cseed =
                        derive_seed(seed, step << 32 | (*deg as u64) << 16 | attempt as u64);
                    let x = random_homogeneous_combo(gens, *deg, cseed)?;
                    let fc1 = check_fc1(&model, &family, &x, dir, base, 1)?;
                    let fc2 = fc1 && check_fc2(&model, product, &x)?;
                    if !(fc1 && fc2) {
                        last_reason = format!(
                            "candidate of degree {deg} failed FC{}",
                            if fc1 { 2 } else { 1 }
                        );
                        continue;
                    }
                    // re-verify on the shifted grid before accepting
                    if !check_fc1(&model, &family, &x, dir, base + 1, 1)? {
                        last_reason =
                            format!("candidate of degree {deg} failed FC1 on the shifted grid");
                        continue;
                    }
                    let fc3 = if opts.check_fc3 {
                        Some(check_fc3(&model, product, &x, &p.ideals()[dir - 1])?)
                    } else {
                        None
                    };
                    accepted = Some(FcCandidate {
                        element: x,
                        direction: dir,
                        seed: cseed,
                        checks: FcChecks { fc1, fc2, fc3 },
                    });
                    break 'strata;
                }
            }
            let Some(candidate) = accepted else {
                return Err(Error::SearchFailure {
                    record: Box::new(record),
                    reason: last_reason,
                });
            };
            let next = model.quotient(&Ideal::principal(&candidate.element))?;
            let sat = next.gamma().saturate(product)?;
            record.ledger.dims.push(sat.krull_dim_quotient()?);
            record.models.push(next);
            record.elements.push(candidate);
        }
    }
    let d = &record.ledger.dims;
    record.maximal = d.len() >= 2 && d[d.len() - 1] < 0 && d[d.len() - 2] >= 0;
    Ok(record)
}

/// `(Γ + (x_1..x_t)) : I^∞` for a finished record.
pub fn reduction_ideal(p: &ProblemInstance, record: &FcSequenceRecord) -> Result<Ideal> {
    record.models.last().unwrap().gamma().saturate(p.product())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    PositiveCertified,
    ZeroCertified,
    Undetermined,
}

impl Positivity {
    pub fn tag(&self) -> &'static str {
        match self {
            Positivity::PositiveCertified => "positive-certified",
            Positivity::ZeroCertified => "zero-certified",
            Positivity::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub outcome: Positivity,
    /// Seeds whose sequence met the dimension condition.
    pub witnesses: Vec<u64>,
    /// Seeds whose search failed outright.
    pub failures: Vec<u64>,
    pub e_table: Option<i64>,
}

/// Whether `e(k)` is nonzero, decided by searching for a sequence with the
/// dimension condition, and by the table when one is supplied.
pub fn positivity(
    p: &ProblemInstance,
    k: &[u32],
    seeds: &[u64],
    opts: &SearchOptions,
    table: Option<&HilbertTable>,
) -> Result<PositivityReport> {
    check_type(p, k)?;
    let t: u32 = k[1..].iter().sum();
    let target = p.ell() as i32 - t as i32;
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for &seed in seeds {
        match build_sequence(p, k, seed, opts) {
            Ok(r) if r.final_dim() == target => witnesses.push(seed),
            Ok(_) => {}
            Err(e) if e.is_inconclusive() => failures.push(seed),
            Err(e) => return Err(e),
        }
    }
    let e_table = match table {
        Some(t) => Some(
            t.difference(&vec![0; k.len()], k)
                .ok_or_else(|| Error::Input("table grid does not cover this type".into()))?,
        ),
        None => None,
    };
    let outcome = match (witnesses.is_empty(), e_table) {
        (false, Some(0)) => {
            return Err(Error::Inconsistency(format!(
                "seed {} gives a sequence with the dimension condition but the table says e = 0",
                witnesses[0]
            )))
        }
        (false, _) => Positivity::PositiveCertified,
        (true, Some(0)) => Positivity::ZeroCertified,
        (true, _) => Positivity::Undetermined,
    };
    Ok(PositivityReport {
        outcome,
        witnesses,
        failures,
        e_table,
    })
}

fn check_type(p: &ProblemInstance, k: &[u32]) -> Result<()> {
    if k.len() != p.s() + 1 {
        return Err(Error::ArityMismatch {
            expected: p.s() + 1,
            got: k.len(),
        });
    }
    if k.iter().sum::<u32>() + 1 != p.ell() {
        return Err(Error::Input(format!(
            "type entries must sum to ell - 1 = {}",
            p.ell() - 1
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum ReductionOutcome {
    /// `e_direct ≠ 0` and a sequence was found.
    Compared {
        e_reduced: i64,
        record: FcSequenceRecord,
        /// `dim A/((x) : I^∞) = ell - t`.
        dim_condition: bool,
    },
    /// `e_direct = 0`: the positivity criterion is reported instead.
    Zero(PositivityReport),
    /// The reduction route could not finish.
    Inconclusive {
        reason: String,
        record: Option<Box<FcSequenceRecord>>,
    },
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub k: Vec<u32>,
    pub e_direct: i64,
    pub base: Vec<u32>,
    pub outcome: ReductionOutcome,
}

impl ReductionReport {
    /// `Some(true)` when both routes agree, `None` when undecided.
    pub fn agrees(&self) -> Option<bool> {
        match &self.outcome {
            ReductionOutcome::Compared { e_reduced, .. } => Some(*e_reduced == self.e_direct),
            ReductionOutcome::Zero(r) => match r.outcome {
                Positivity::ZeroCertified => Some(true),
                Positivity::PositiveCertified => Some(false),
                Positivity::Undetermined => None,
            },
            ReductionOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Compares the table's `e(k)` with `e_A(J, A/((x_1..x_t) : I^∞))`.
pub fn verify_reduction(
    p: &ProblemInstance,
    table: &HilbertTable,
    k: &[u32],
    seed: u64,
    opts: &SearchOptions,
) -> Result<ReductionReport> {
    check_type(p, k)?;
    let report = mixed_multiplicities(table, Route::DirectTable)?;
    let e_direct = report
        .get(k)
        .ok_or_else(|| Error::Input("type not in the report".into()))?;
    let opts = SearchOptions {
        fc1_base: opts.fc1_base.or(Some(table.base[0].max(1))),
        ..*opts
    };
    let outcome = if e_direct == 0 {
        let seeds: Vec<u64> = (0..5).map(|i| derive_seed(seed, i)).collect();
        ReductionOutcome::Zero(positivity(p, k, &seeds, &opts, Some(table))?)
    } else {
        match build_sequence(p, k, seed, &opts) {
            Ok(record) => {
                let h = reduction_ideal(p, &record)?;
                let t: u32 = k[1..].iter().sum();
                let dim_condition = record.final_dim() == p.ell() as i32 - t as i32;
                match p.model().hilbert_samuel(p.j(), &h) {
                    Ok(sd) => ReductionOutcome::Compared {
                        e_reduced: sd.mult,
                        record,
                        dim_condition,
                    },
                    Err(e) if e.is_inconclusive() => ReductionOutcome::Inconclusive {
                        reason: e.to_string(),
                        record: Some(Box::new(record)),
                    },
                    Err(e) => return Err(e),
                }
            }
            Err(Error::SearchFailure { record, reason }) => ReductionOutcome::Inconclusive {
                reason,
                record: Some(record),
            },
            Err(e) if e.is_inconclusive() => ReductionOutcome::Inconclusive {
                reason: e.to_string(),
                record: None,
            },
            Err(e) => return Err(e),
        }
    };
    Ok(ReductionReport {
        k: k.to_vec(),
        e_direct,
        base: table.base.clone(),
        outcome,
    })
}

/// Every type `k` with `|k| = ell - 1`, in report order.
pub fn all_types(p: &ProblemInstance) -> Vec<Vec<u32>> {
    compositions(p.ell() - 1, p.s() + 1)
}
