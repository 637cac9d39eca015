//! Ideals of a polynomial ring, with a cached reduced Gröbner basis and a
//! combinatorial fast path for monomial ideals.

use std::sync::OnceLock;

use crate::context::RingContext;
use crate::error::{Error, Result};
use crate::groebner::{groebner, GroebnerBasis};
use crate::monomial::Monomial;
use crate::monomial_ideal::{hf_from_numerator, ring_hf, MonomialIdeal};
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};

/// Colon iterations allowed before a saturation is declared runaway.
pub const MAX_SATURATION_STEPS: usize = 64;

#[derive(Debug)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    monomial: Option<MonomialIdeal>,
    gb: OnceLock<GroebnerBasis>,
    numerator: OnceLock<Vec<i64>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring,
            gens: self.gens.clone(),
            monomial: self.monomial.clone(),
            gb: self.gb.clone(),
            numerator: self.numerator.clone(),
        }
    }
}

impl Ideal {
    /// Zero generators are dropped; all-monomial input is minimalized.
    pub fn new(ring: PolyRing, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::ContextMismatch);
        }
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.iter().all(|g| g.is_monomial()) {
            let mono = MonomialIdeal::new(
                ring.nvars(),
                gens.iter().map(|g| g.leading_monomial().unwrap()),
            );
            return Ok(Self::from_monomial(ring, mono));
        }
        Ok(Self::general(ring, dedup_monic(gens)))
    }

    /// Same as [`new`](Self::new) but never takes the monomial fast path;
    /// used to cross-check the two paths against each other.
    pub fn new_general(ring: PolyRing, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::general(
            ring,
            dedup_monic(gens.into_iter().filter(|g| !g.is_zero()).collect()),
        ))
    }

    fn general(ring: PolyRing, gens: Vec<Polynomial>) -> Self {
        Ideal {
            ring,
            gens,
            monomial: None,
            gb: OnceLock::new(),
            numerator: OnceLock::new(),
        }
    }

    pub fn from_monomial(ring: PolyRing, mono: MonomialIdeal) -> Self {
        let gens = mono
            .gens()
            .iter()
            .map(|&m| Polynomial::term(ring, m, 1))
            .collect();
        Ideal {
            ring,
            gens,
            monomial: Some(mono),
            gb: OnceLock::new(),
            numerator: OnceLock::new(),
        }
    }

    pub fn parse<S: AsRef<str>>(ctx: &RingContext, gens: &[S]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| ctx.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx.ring(), polys)
    }

    pub fn zero(ring: PolyRing) -> Self {
        Self::from_monomial(ring, MonomialIdeal::zero(ring.nvars()))
    }

    pub fn unit(ring: PolyRing) -> Self {
        Self::from_monomial(ring, MonomialIdeal::unit(ring.nvars()))
    }

    /// The homogeneous maximal ideal raised to `n`.
    pub fn maximal_power(ring: PolyRing, n: u32) -> Self {
        Self::from_monomial(ring, MonomialIdeal::maximal_power(ring.nvars(), n))
    }

    pub fn principal(f: &Polynomial) -> Self {
        Self::new(f.ring(), vec![f.clone()]).expect("single ring")
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial.is_some()
    }

    pub fn monomial(&self) -> Option<&MonomialIdeal> {
        self.monomial.as_ref()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn require_homogeneous(&self, ctx: &RingContext) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::NotHomogeneous(ctx.format(g))),
            None => Ok(()),
        }
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(|g| g.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(|g| g.degree()).max()
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// The reduced Gröbner basis under the ring's order (memoized).
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner(self.ring, &self.gens)?;
        // a concurrent fill computes the same basis, so losing the race is fine
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    /// The ideal of leading monomials.
    pub fn lead_ideal(&self) -> Result<MonomialIdeal> {
        if let Some(m) = &self.monomial {
            return Ok(m.clone());
        }
        Ok(MonomialIdeal::new(
            self.ring.nvars(),
            self.groebner()?.leading_monomials(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        if let Some(m) = &self.monomial {
            return Ok(m.is_unit());
        }
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        Ok(self.groebner()?.is_unit())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != self.ring {
            return Err(Error::ContextMismatch);
        }
        if let Some(m) = &self.monomial {
            return Ok(f.terms().iter().all(|(t, _)| m.contains(t)));
        }
        self.groebner()?.contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (reduced Gröbner bases coincide).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        if let (Some(a), Some(b)) = (&self.monomial, &other.monomial) {
            return Ok(a == b);
        }
        Ok(self.groebner()? == other.groebner()?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if let (Some(a), Some(b)) = (&self.monomial, &other.monomial) {
            return Ok(Self::from_monomial(self.ring, a.sum(b)));
        }
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::general(self.ring, dedup_monic(gens)))
    }

    pub fn sum_poly(&self, f: &Polynomial) -> Result<Ideal> {
        self.sum(&Ideal::new(self.ring, vec![f.clone()])?)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if let (Some(a), Some(b)) = (&self.monomial, &other.monomial) {
            return Ok(Self::from_monomial(self.ring, a.product(b)));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g));
            }
        }
        Ok(Self::general(self.ring, dedup_monic(gens)))
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Result<Ideal> {
        self.product(&Ideal::new(self.ring, vec![f.clone()])?)
    }

    /// `self^n`; the zeroth power is the unit ideal.
    pub fn power(&self, n: u32) -> Result<Ideal> {
        if let Some(a) = &self.monomial {
            return Ok(Self::from_monomial(self.ring, a.power(n)));
        }
        let mut acc = if self.monomial.is_none() {
            Self::general(self.ring, vec![Polynomial::one(self.ring)])
        } else {
            Self::unit(self.ring)
        };
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if let (Some(a), Some(b)) = (&self.monomial, &other.monomial) {
            return Ok(Self::from_monomial(self.ring, a.intersect(b)));
        }
        self.intersect_via_elimination(other)
    }

    /// Intersection by eliminating `w` from `w·a + (1 - w)·b`.
    pub fn intersect_via_elimination(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::general(self.ring, Vec::new()));
        }
        let big = self.ring.extended(1, MonomialOrder::Elimination(1))?;
        let w = Polynomial::var(big, 0);
        let one_minus_w = Polynomial::one(big).sub(&w);
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in &self.gens {
            gens.push(f.embed(big, 1).mul(&w));
        }
        for g in &other.gens {
            gens.push(g.embed(big, 1).mul(&one_minus_w));
        }
        let gb = groebner(big, &gens)?;
        let kept = gb
            .elements()
            .iter()
            .filter(|f| f.terms().iter().all(|(m, _)| m.exp(0) == 0))
            .map(|f| f.project(self.ring, 1))
            .collect();
        Ok(Self::general(self.ring, kept))
    }

    /// `(self : other)`; the colon by the zero ideal is the unit ideal.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if let (Some(a), Some(b)) = (&self.monomial, &other.monomial) {
            return Ok(Self::from_monomial(self.ring, a.colon(b)));
        }
        self.colon_via_elimination(other)
    }

    /// `(a : b) = ⋂_f (a ∩ (f)) / f` over the generators `f` of `b`.
    pub fn colon_via_elimination(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for f in &other.gens {
            let part = self.colon_poly(f)?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect_via_elimination(&part)?,
            });
            if let Some(a) = &acc {
                if a.is_zero() {
                    break;
                }
            }
        }
        Ok(acc.unwrap_or_else(|| Self::general(self.ring, vec![Polynomial::one(self.ring)])))
    }

    fn colon_poly(&self, f: &Polynomial) -> Result<Ideal> {
        let meet = self.intersect_via_elimination(&Ideal::general(self.ring, vec![f.clone()]))?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.exact_div(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::general(self.ring, gens))
    }

    /// `(self : other^∞)`, iterating colons until reduced bases repeat.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if let (Some(a), Some(b)) = (&self.monomial, &other.monomial) {
            return Ok(Self::from_monomial(self.ring, a.saturate(b)));
        }
        self.saturate_via_elimination(other)
    }

    pub fn saturate_via_elimination(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.reduced()?;
        for _ in 0..MAX_SATURATION_STEPS {
            let next = cur.colon_via_elimination(other)?.reduced()?;
            if next.groebner()? == cur.groebner()? {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::ComputationLimit(format!(
            "saturation did not stabilize in {MAX_SATURATION_STEPS} steps"
        )))
    }

    /// The same ideal, generated by its reduced Gröbner basis.
    pub fn reduced(&self) -> Result<Ideal> {
        if self.monomial.is_some() {
            return Ok(self.clone());
        }
        let gb = self.groebner()?.clone();
        let out = Self::general(self.ring, gb.elements().to_vec());
        let _ = out.gb.set(gb);
        Ok(out)
    }

    /// Numerator of the Hilbert series of the quotient ring (memoized).
    pub fn hilbert_numerator(&self) -> Result<&[i64]> {
        if let Some(n) = self.numerator.get() {
            return Ok(n);
        }
        let n = self.lead_ideal()?.hilbert_numerator();
        let _ = self.numerator.set(n);
        Ok(self.numerator.get().expect("just set"))
    }

    /// `dim_k` of the degree-`e` part of the quotient ring.
    pub fn quotient_hf(&self, e: u32) -> Result<i64> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(
                "Hilbert function of an inhomogeneous ideal".into(),
            ));
        }
        Ok(hf_from_numerator(
            self.hilbert_numerator()?,
            self.ring.nvars(),
            e,
        ))
    }

    /// `dim_k` of the degree-`e` part of the ideal.
    pub fn graded_piece_dim(&self, e: u32) -> Result<i64> {
        Ok(ring_hf(self.ring.nvars(), e) - self.quotient_hf(e)?)
    }

    /// Krull dimension of the quotient ring; `-1` for the unit ideal.
    pub fn krull_dim_quotient(&self) -> Result<i32> {
        Ok(self.lead_ideal()?.krull_dim())
    }

    /// Images of the generators under a ring map sending `x_i` to `images[i]`.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| Polynomial::from_terms(self.ring, g.terms().iter().map(|(m, c)| (f(m), *c))))
            .collect();
        Ideal::new(self.ring, gens)
    }
}

/// Normalizes to monic and drops duplicates, keeping first occurrences.
fn dedup_monic(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = std::collections::HashSet::new();
    gens.into_iter()
        .map(|g| g.monic())
        .filter(|g| seen.insert(g.clone()))
        .collect()
}
