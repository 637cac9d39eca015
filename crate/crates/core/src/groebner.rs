//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! sugar selection strategy.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};

pub const MAX_SPAIRS: usize = 50_000;
pub const MAX_DEGREE: u32 = 200;

/// A reduced Gröbner basis: monic, inter-reduced, sorted by decreasing
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroebnerBasis {
    ring: PolyRing,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero"))
            .collect()
    }

    /// Whether the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.first().is_some_and(|g| g.is_unit())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != self.ring {
            return Err(Error::ContextMismatch);
        }
        let divisors = Divisors::new(&self.elements);
        Ok(divisors.reduce(f, &self.elements, false))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Leading data of a list of monic polynomials, for fast divisor lookup.
struct Divisors {
    leads: Vec<(Monomial, u32)>,
}

impl Divisors {
    fn new(polys: &[Polynomial]) -> Self {
        Divisors {
            leads: polys
                .iter()
                .map(|g| {
                    let m = g.leading_monomial().expect("nonzero");
                    (m, m.support())
                })
                .collect(),
        }
    }

    #[inline]
    fn find(&self, m: &Monomial, active: Option<&[bool]>, skip: Option<usize>) -> Option<usize> {
        let sup = m.support();
        self.leads.iter().enumerate().position(|(i, (lm, ls))| {
            Some(i) != skip && active.is_none_or(|a| a[i]) && ls & !sup == 0 && lm.divides(m)
        })
    }

    /// Full reduction of `f` modulo the (monic) `polys`; with `top_only`,
    /// stops as soon as the leading term is irreducible.
    fn reduce(&self, f: &Polynomial, polys: &[Polynomial], top_only: bool) -> Polynomial {
        self.reduce_with(f, polys, None, None, top_only)
    }

    fn reduce_with(
        &self,
        f: &Polynomial,
        polys: &[Polynomial],
        active: Option<&[bool]>,
        skip: Option<usize>,
        top_only: bool,
    ) -> Polynomial {
        let ring = f.ring();
        let field = ring.field();
        let mut done: Vec<(Monomial, u32)> = Vec::new();
        let mut rest: Vec<(Monomial, u32)> = f.terms().to_vec();
        let mut start = 0;
        while start < rest.len() {
            let (m, c) = rest[start];
            match self.find(&m, active, skip) {
                Some(i) => {
                    let g = &polys[i];
                    let q = g.leading_monomial().expect("nonzero").quotient_of(&m);
                    let neg = field.neg(c);
                    // merge rest[start+1..] with -c*q*tail(g)
                    let mut out = Vec::with_capacity(rest.len() - start + g.len());
                    let mut a = rest[start + 1..].iter().peekable();
                    let mut b = g.terms()[1..]
                        .iter()
                        .map(|&(bm, bc)| (bm.mul(&q), field.mul(bc, neg)))
                        .peekable();
                    loop {
                        match (a.peek(), b.peek()) {
                            (None, None) => break,
                            (Some(_), None) => out.push(*a.next().unwrap()),
                            (None, Some(_)) => out.push(b.next().unwrap()),
                            (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                                Ordering::Greater => out.push(*a.next().unwrap()),
                                Ordering::Less => out.push(b.next().unwrap()),
                                Ordering::Equal => {
                                    let s = field.add(x.1, y.1);
                                    if s != 0 {
                                        out.push((x.0, s));
                                    }
                                    a.next();
                                    b.next();
                                }
                            },
                        }
                    }
                    rest = out;
                    start = 0;
                }
                None => {
                    if top_only {
                        done.extend_from_slice(&rest[start..]);
                        break;
                    }
                    done.push((m, c));
                    start += 1;
                }
            }
        }
        Polynomial::from_sorted(ring, done)
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder {
    ring: PolyRing,
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    divisors: Divisors,
    pairs: Vec<Pair>,
    reduced: usize,
}

impl Builder {
    fn lm(&self, i: usize) -> Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    /// Gebauer–Möller update for a new element `h`.
    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hi = self.polys.len();
        let hm = h.leading_monomial().expect("nonzero");
        self.divisors.leads.push((hm, hm.support()));
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        let candidates: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let gm = self.lm(g);
                let lcm = hm.lcm(&gm);
                let s = (self.sugar[g] - gm.degree()).max(sugar - hm.degree()) + lcm.degree();
                Pair {
                    i: g,
                    j: hi,
                    lcm,
                    sugar: s,
                }
            })
            .collect();

        // chain criterion among the new pairs; coprime pairs are kept here
        // so that they can shadow others, then dropped below
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = hm.is_coprime(&self.lm(p.i));
            let shadowed = !coprime
                && (candidates[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm))
                    || kept.iter().any(|q| q.lcm.divides(&p.lcm)));
            if coprime || !shadowed {
                kept.push(*p);
            }
        }
        // among pairs with identical lcm keep one, preferring a coprime one
        let mut new_pairs: Vec<Pair> = Vec::new();
        for p in &kept {
            if let Some(q) = new_pairs.iter_mut().find(|q| q.lcm == p.lcm) {
                if hm.is_coprime(&self.lm(p.i)) {
                    *q = *p;
                }
                continue;
            }
            new_pairs.push(*p);
        }
        new_pairs.retain(|p| !hm.is_coprime(&self.lm(p.i)));

        // old pairs made redundant by h
        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().expect("nonzero");
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm) && lm(p.i).lcm(&hm) != p.lcm && lm(p.j).lcm(&hm) != p.lcm)
        });
        // pairs of two monomials have zero S-polynomial
        let h_is_term = self.polys[hi].is_monomial();
        new_pairs.retain(|p| !(h_is_term && self.polys[p.i].is_monomial()));
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && hm.divides(&self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| ring.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Polynomial {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let fq = f.leading_monomial().unwrap().quotient_of(&p.lcm);
        let gq = g.leading_monomial().unwrap().quotient_of(&p.lcm);
        let field = self.ring.field();
        f.mul_term(&fq, 1).add_scaled(g, &gq, field.neg(1))
    }
}

/// Reduced Gröbner basis of `gens` under the order of their ring.
/// The empty list (and a list of zeros) gives the empty basis.
pub fn groebner(ring: PolyRing, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let mut input: Vec<Polynomial> = Vec::new();
    for g in gens {
        if g.ring() != ring {
            return Err(Error::ContextMismatch);
        }
        if let Some(d) = g.degree() {
            if d > MAX_DEGREE {
                return Err(Error::ComputationLimit(format!(
                    "generator of degree {d} exceeds the bound {MAX_DEGREE}"
                )));
            }
            input.push(g.monic());
        }
    }
    if input.iter().any(|g| g.is_unit()) {
        return Ok(GroebnerBasis {
            ring,
            elements: vec![Polynomial::one(ring)],
        });
    }
    // smaller leads first keeps early reductions cheap
    input.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| {
            ring.cmp(
                &a.leading_monomial().unwrap(),
                &b.leading_monomial().unwrap(),
            )
        })
    });
    input.dedup();

    let mut b = Builder {
        ring,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        divisors: Divisors { leads: Vec::new() },
        pairs: Vec::new(),
        reduced: 0,
    };
    for g in input {
        let r = b
            .divisors
            .reduce_with(&g, &b.polys, Some(&b.active), None, false);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(GroebnerBasis {
                ring,
                elements: vec![Polynomial::one(ring)],
            });
        }
        let s = g.degree().unwrap();
        b.insert(r.monic(), s);
    }

    while let Some(p) = b.next_pair() {
        b.reduced += 1;
        if b.reduced > MAX_SPAIRS {
            return Err(Error::ComputationLimit(format!(
                "more than {MAX_SPAIRS} S-pairs; basis has {} elements, {} pairs pending",
                b.active.iter().filter(|&&a| a).count(),
                b.pairs.len()
            )));
        }
        let s = b.spoly(&p);
        let r = b
            .divisors
            .reduce_with(&s, &b.polys, Some(&b.active), None, false);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(GroebnerBasis {
                ring,
                elements: vec![Polynomial::one(ring)],
            });
        }
        let deg = r.degree().unwrap();
        if deg > MAX_DEGREE {
            return Err(Error::ComputationLimit(format!(
                "basis element of degree {deg} exceeds the bound {MAX_DEGREE}"
            )));
        }
        b.insert(r.monic(), p.sugar.max(deg));
    }

    // inter-reduce the minimal basis
    let minimal: Vec<Polynomial> = b
        .polys
        .iter()
        .zip(&b.active)
        .filter(|(_, &a)| a)
        .map(|(g, _)| g.clone())
        .collect();
    let divisors = Divisors::new(&minimal);
    let mut elements: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let g = &minimal[i];
            let lead = Polynomial::from_sorted(ring, g.terms()[..1].to_vec());
            let tail = Polynomial::from_sorted(ring, g.terms()[1..].to_vec());
            lead.add(&divisors.reduce_with(&tail, &minimal, None, Some(i), false))
        })
        .collect();
    elements.sort_by(|a, b| {
        ring.cmp(
            &b.leading_monomial().unwrap(),
            &a.leading_monomial().unwrap(),
        )
    });
    Ok(GroebnerBasis { ring, elements })
}

/// Reduced Gröbner basis of `gens` under `order`.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Input("empty generator list".into()));
    };
    let ring = first.ring().with_order(order);
    let mut converted = Vec::with_capacity(gens.len());
    for g in gens {
        if g.ring().with_order(order) != ring {
            return Err(Error::ContextMismatch);
        }
        converted.push(if g.ring().order() == order {
            g.clone()
        } else {
            g.with_order(order)
        });
    }
    groebner(ring, &converted)
}

/// Remainder of `f` on division by a Gröbner basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

/// Whether every S-polynomial reduces to zero (Buchberger's criterion).
pub fn is_groebner(gens: &[Polynomial]) -> bool {
    let divisors = Divisors::new(gens);
    let monic: Vec<Polynomial> = gens.iter().map(|g| g.monic()).collect();
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let (f, g) = (&monic[i], &monic[j]);
            let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
            let l = fm.lcm(&gm);
            let s = f.mul_term(&fm.quotient_of(&l), 1).add_scaled(
                g,
                &gm.quotient_of(&l),
                f.ring().field().neg(1),
            );
            if !divisors.reduce(&s, &monic, false).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::RingContext;

    fn ctx() -> RingContext {
        RingContext::with_vars(&["x", "y"]).unwrap()
    }

    fn gb(ctx: &RingContext, gens: &[&str]) -> GroebnerBasis {
        let gens: Vec<_> = gens.iter().map(|s| ctx.parse(s).unwrap()).collect();
        buchberger(&gens, MonomialOrder::Grevlex).unwrap()
    }

    fn show(ctx: &RingContext, g: &GroebnerBasis) -> Vec<String> {
        g.elements().iter().map(|f| ctx.format(f)).collect()
    }

    #[test]
    fn normal_forms() {
        let c = ctx();
        let g = gb(&c, &["x"]);
        assert!(g.normal_form(&c.parse("x^2").unwrap()).unwrap().is_zero());
        assert_eq!(
            c.format(&g.normal_form(&c.parse("x + y").unwrap()).unwrap()),
            "y"
        );
        let g = gb(&c, &["x^2 + y^2", "x*y"]);
        assert!(g.normal_form(&c.parse("y^3").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn small_bases() {
        let c = ctx();
        assert_eq!(show(&c, &gb(&c, &["x", "y"])), ["x", "y"]);
        assert_eq!(
            show(&c, &gb(&c, &["x^2 + y^2", "x*y"])),
            ["y^3", "x^2 + y^2", "x*y"]
        );
        assert_eq!(show(&c, &gb(&c, &["x - y", "y - x"])), ["x - y"]);
        assert_eq!(show(&c, &gb(&c, &["x + 1", "x"])), ["1"]);
    }

    #[test]
    fn lex_elimination() {
        // twisted cubic: eliminating t from (x - t, y - t^2, z - t^3)
        let c = RingContext::new(&["t", "x", "y", "z"], 32003, MonomialOrder::Lex).unwrap();
        let gens: Vec<_> = ["x - t", "y - t^2", "z - t^3"]
            .iter()
            .map(|s| c.parse(s).unwrap())
            .collect();
        let g = buchberger(&gens, MonomialOrder::Elimination(1)).unwrap();
        assert!(is_groebner(g.elements()));
        let free: Vec<String> = g
            .elements()
            .iter()
            .filter(|f| f.terms().iter().all(|t| t.0.exp(0) == 0))
            .map(|f| c.format(&f.with_order(MonomialOrder::Lex)))
            .collect();
        let y = c.parse("y - x^2").unwrap();
        let z = c.parse("z - x^3").unwrap();
        let sub = buchberger(
            &free.iter().map(|s| c.parse(s).unwrap()).collect::<Vec<_>>(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        assert!(sub.contains(&y.with_order(MonomialOrder::Grevlex)).unwrap());
        assert!(sub.contains(&z.with_order(MonomialOrder::Grevlex)).unwrap());
    }

    #[test]
    fn degree_cap_is_reported() {
        let c = ctx();
        let gens = [c.parse("x^201 - y^201").unwrap(), c.parse("x*y").unwrap()];
        assert!(matches!(
            buchberger(&gens, MonomialOrder::Lex),
            Err(Error::ComputationLimit(_))
        ));
    }
}
