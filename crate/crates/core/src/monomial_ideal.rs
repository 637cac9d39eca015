//! Monomial ideals via their minimal generators.
//!
//! The combinatorial fast path: sums, products, lcm-intersections, colons,
//! Hilbert series and dimension all work on exponent vectors directly.

use crate::monomial::{binomial, count_of_degree, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes `gens` (order: degree, then exponent vector).
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        MonomialIdeal {
            nvars,
            gens: minimalize(gens.into_iter().collect()),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::ONE],
        }
    }

    /// The maximal homogeneous ideal raised to `n`.
    pub fn maximal_power(nvars: usize, n: u32) -> Self {
        let mut gens = Vec::new();
        crate::monomial::for_each_of_degree(nvars, n, |m| gens.push(m));
        Self::new(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(|m| m.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).max()
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().chain(&other.gens).copied())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.mul(b));
            }
        }
        Self::new(self.nvars, out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            nvars: self.nvars,
            gens: self.gens.iter().map(|g| g.mul(m)).collect(),
        }
    }

    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut acc = Self::unit(self.nvars);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.lcm(b));
            }
        }
        Self::new(self.nvars, out)
    }

    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().map(|g| g.colon(m)))
    }

    /// `(self : other)`; the colon by the zero ideal is the unit ideal.
    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut acc = Self::unit(self.nvars);
        for m in &other.gens {
            acc = acc.intersect(&self.colon_monomial(m));
        }
        acc
    }

    /// `(self : other^inf)`, iterating colons until the chain stabilizes.
    pub fn saturate(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of the
    /// quotient ring, as coefficients of `1, t, t^2, ...`.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        hilbert_numerator(self.gens.clone())
    }

    /// Krull dimension of the quotient; `-1` for the unit ideal.
    pub fn krull_dim(&self) -> i32 {
        if self.is_unit() {
            return -1;
        }
        let n = self.nvars;
        let supports: Vec<u32> = self.gens.iter().map(|g| g.support()).collect();
        (0u32..1 << n)
            .filter(|&v| supports.iter().all(|&s| s & !v != 0))
            .map(|v| v.count_ones() as i32)
            .max()
            .unwrap_or(0)
    }

    /// Number of degree-`e` monomials outside the ideal.
    pub fn quotient_hf(&self, e: u32) -> i64 {
        hf_from_numerator(&self.hilbert_numerator(), self.nvars, e)
    }

    /// Monomials outside the ideal, if there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.nvars;
        let bounds: Vec<u16> = (0..n)
            .map(|i| {
                self.gens
                    .iter()
                    .filter(|g| g.support() == 1 << i || g.is_one())
                    .map(|g| g.exp(i))
                    .min()
            })
            .collect::<Option<_>>()?;
        if self.is_unit() {
            return Some(Vec::new());
        }
        let mut out = Vec::new();
        let mut exps = [0u16; crate::monomial::MAX_VARS];
        fn rec(
            ideal: &MonomialIdeal,
            pos: usize,
            bounds: &[u16],
            exps: &mut [u16; crate::monomial::MAX_VARS],
            out: &mut Vec<Monomial>,
        ) {
            if pos == bounds.len() {
                let m = Monomial::raw(*exps);
                if !ideal.contains(&m) {
                    out.push(m);
                }
                return;
            }
            for e in 0..bounds[pos] {
                exps[pos] = e;
                rec(ideal, pos + 1, bounds, exps, out);
            }
            exps[pos] = 0;
        }
        rec(self, 0, &bounds, &mut exps, &mut out);
        Some(out)
    }
}

/// Drops every generator divisible by another.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    let mut supports: Vec<u32> = Vec::with_capacity(gens.len());
    for g in gens {
        let s = g.support();
        if !kept
            .iter()
            .zip(&supports)
            .any(|(k, &ks)| ks & !s == 0 && k.divides(&g))
        {
            kept.push(g);
            supports.push(s);
        }
    }
    kept
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Pivot recursion `N(I) = N(I + (p)) + t^deg(p) N(I : p)`.
fn hilbert_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    // base case: pairwise coprime generators
    let mut seen = 0u32;
    let mut coprime = true;
    for g in &gens {
        let s = g.support();
        if s & seen != 0 {
            coprime = false;
            break;
        }
        seen |= s;
    }
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut f = vec![0i64; d + 1];
            f[0] = 1;
            f[d] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return trim(acc);
    }
    // pivot on the variable occurring in the most generators
    let nv = crate::monomial::MAX_VARS;
    let mut counts = vec![0usize; nv];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let j = (0..nv)
        .max_by_key(|&i| (counts[i], std::cmp::Reverse(i)))
        .unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|g| g.exp(j)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let mut e = exps[(exps.len() - 1) / 2];
    if let Some(pure) = gens
        .iter()
        .filter(|g| g.support() == 1 << j)
        .map(|g| g.exp(j))
        .min()
    {
        e = e.min(pure - 1);
    }
    debug_assert!(e >= 1);
    let p = Monomial::var(j, e);
    let mut with_p = gens.clone();
    with_p.push(p);
    let sum = hilbert_numerator(minimalize(with_p));
    let colon = hilbert_numerator(minimalize(gens.iter().map(|g| g.colon(&p)).collect()));
    let mut out = sum;
    poly_add_shifted(&mut out, &colon, e as usize);
    trim(out)
}

/// Value at degree `e` of the Hilbert function with series `num / (1-t)^n`.
pub fn hf_from_numerator(num: &[i64], nvars: usize, e: u32) -> i64 {
    num.iter()
        .enumerate()
        .filter(|&(k, _)| k as u32 <= e)
        .map(|(k, &c)| c * count_of_degree(nvars, e - k as u32))
        .sum()
}

/// Sum of the Hilbert function over all degrees, when finite (numerator
/// evaluated after dividing out `(1-t)^n`).
pub fn total_from_numerator(num: &[i64], nvars: usize) -> Option<i64> {
    // N(t) / (1-t)^n is a polynomial iff (1-t)^n divides N
    let mut q = num.to_vec();
    for _ in 0..nvars {
        // synthetic division by (1 - t): q_k = sum_{i<=k} n_i
        let total: i64 = q.iter().sum();
        if total != 0 {
            return None;
        }
        let mut acc = 0;
        let mut next = Vec::with_capacity(q.len());
        for &c in &q[..q.len().saturating_sub(1)] {
            acc += c;
            next.push(acc);
        }
        q = if next.is_empty() { vec![0] } else { next };
    }
    Some(q.iter().sum())
}

/// Dimension count of a degree-`e` piece of the whole ring.
pub fn ring_hf(nvars: usize, e: u32) -> i64 {
    binomial(e as i64 + nvars as i64 - 1, nvars as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::for_each_of_degree;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|e| m(e)))
    }

    fn brute_hf(i: &MonomialIdeal, e: u32) -> i64 {
        let mut c = 0;
        for_each_of_degree(i.nvars(), e, |mono| {
            if !i.contains(&mono) {
                c += 1;
            }
        });
        c
    }

    #[test]
    fn products_and_powers_are_minimal() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(i.product(&i), ideal(2, &[&[4, 0], &[2, 3], &[0, 6]]));
        assert_eq!(i.power(2).gens().len(), 3);
        assert_eq!(MonomialIdeal::maximal_power(2, 2).gens().len(), 3);
        assert!(i.power(0).is_unit());
    }

    #[test]
    fn intersections_and_colons() {
        let x = ideal(2, &[&[1, 0]]);
        let y = ideal(2, &[&[0, 1]]);
        assert_eq!(x.intersect(&y), ideal(2, &[&[1, 1]]));
        let a = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(a.intersect(&y), ideal(2, &[&[1, 1]]));
        assert_eq!(x.intersect(&x), x);
        assert_eq!(a.colon(&x), ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(a.saturate(&y), x);
        assert_eq!(x.colon(&MonomialIdeal::unit(2)), x);
    }

    #[test]
    fn dimensions() {
        assert_eq!(ideal(2, &[&[1, 0]]).krull_dim(), 1);
        assert_eq!(ideal(3, &[&[1, 1, 0], &[1, 0, 1]]).krull_dim(), 2);
        assert_eq!(ideal(2, &[&[1, 0], &[0, 1]]).krull_dim(), 0);
        assert_eq!(MonomialIdeal::unit(2).krull_dim(), -1);
        assert_eq!(MonomialIdeal::zero(3).krull_dim(), 3);
    }

    #[test]
    fn finite_colength() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(i.standard_monomials().unwrap().len(), 6);
        assert_eq!(total_from_numerator(&i.hilbert_numerator(), 2), Some(6));
        assert_eq!(ideal(2, &[&[1, 0]]).standard_monomials(), None);
        assert_eq!(
            total_from_numerator(&ideal(2, &[&[1, 0]]).hilbert_numerator(), 2),
            None
        );
        // colength of (x^2, y^3)^n is 3n(n+1)
        for n in 1..5u32 {
            assert_eq!(
                total_from_numerator(&i.power(n).hilbert_numerator(), 2),
                Some(3 * n as i64 * (n as i64 + 1))
            );
        }
    }

    fn arb_ideal(n: usize) -> impl Strategy<Value = MonomialIdeal> {
        proptest::collection::vec(proptest::collection::vec(0u32..5, n), 1..6)
            .prop_map(move |gs| MonomialIdeal::new(n, gs.iter().map(|e| m(e))))
    }

    proptest! {
        #[test]
        fn numerator_matches_enumeration(i in arb_ideal(3)) {
            let num = i.hilbert_numerator();
            for e in 0..10 {
                prop_assert_eq!(hf_from_numerator(&num, 3, e), brute_hf(&i, e));
            }
        }

        #[test]
        fn colon_laws(a in arb_ideal(3), b in arb_ideal(3)) {
            let c = a.colon(&b);
            prop_assert!(c.product(&b).is_subset_of(&a));
            prop_assert!(a.is_subset_of(&c));
            let s = a.saturate(&b);
            prop_assert_eq!(s.saturate(&b), s);
        }

        #[test]
        fn intersection_is_meet(a in arb_ideal(3), b in arb_ideal(3), e in proptest::collection::vec(0u32..6, 3)) {
            let mono = m(&e);
            prop_assert_eq!(a.intersect(&b).contains(&mono), a.contains(&mono) && b.contains(&mono));
        }
    }
}
