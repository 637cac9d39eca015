use mixmult::context::RingContext;
use mixmult::groebner::groebner;
use mixmult::rng::derive_seed;
use mixmult::sample::{random_homogeneous_ideal, shuffled, RandomInstance, SampleShape};
use mixmult::{Ideal, Polynomial};

fn ctx(n: usize) -> RingContext {
    RingContext::with_vars(&["x", "y", "z"][..n]).unwrap()
}

fn random_ideal(n: usize, seed: u64) -> Ideal {
    let c = ctx(n);
    Ideal::new(c.ring(), random_homogeneous_ideal(c.ring(), seed)).unwrap()
}

#[test]
fn reduced_basis_ignores_presentation() {
    for i in 0..20u64 {
        let n = 2 + (i % 2) as usize;
        let c = ctx(n);
        let gens = random_homogeneous_ideal(c.ring(), derive_seed(5, i));
        let reference = groebner(c.ring(), &gens).unwrap();
        for t in 0..3 {
            let mut g: Vec<Polynomial> = shuffled(&gens, derive_seed(6, i * 3 + t));
            // rescale one generator and add a redundant combination
            g[0] = g[0].scale(7 + t as u32);
            g.push(g[0].add(&g[1]));
            let other = groebner(c.ring(), &g).unwrap();
            assert_eq!(
                other.elements(),
                reference.elements(),
                "ideal {i}, presentation {t}"
            );
        }
    }
}

#[test]
fn colon_and_saturation_laws() {
    for i in 0..12u64 {
        let n = 2 + (i % 2) as usize;
        let a = random_ideal(n, derive_seed(7, i));
        let b = random_ideal(n, derive_seed(8, i));
        let q = a.colon(&b).unwrap();
        assert!(
            a.contains_ideal(&q.product(&b).unwrap()).unwrap(),
            "ideal {i}"
        );
        assert!(q.contains_ideal(&a).unwrap());
        let sat = a.saturate(&b).unwrap();
        assert!(sat.contains_ideal(&q).unwrap());
        assert!(sat.saturate(&b).unwrap().equals(&sat).unwrap(), "ideal {i}");
    }
}

#[test]
fn intersection_is_the_largest_common_ideal() {
    for i in 0..12u64 {
        let n = 2 + (i % 2) as usize;
        let a = random_ideal(n, derive_seed(9, i));
        let b = random_ideal(n, derive_seed(10, i));
        let meet = a.intersect(&b).unwrap();
        assert!(a.contains_ideal(&meet).unwrap() && b.contains_ideal(&meet).unwrap());
        assert!(meet.contains_ideal(&a.product(&b).unwrap()).unwrap());
    }
}

#[test]
fn monomial_fast_path_agrees_with_elimination() {
    for i in 0..15u64 {
        let inst = RandomInstance::generate(derive_seed(11, i), SampleShape::default());
        let c = inst.context().unwrap();
        let j = Ideal::parse(&c, &inst.j).unwrap();
        let a = Ideal::parse(&c, &inst.ideals[0]).unwrap();
        let ga = Ideal::new_general(c.ring(), a.gens().to_vec()).unwrap();
        let gj = Ideal::new_general(c.ring(), j.gens().to_vec()).unwrap();
        for (fast, slow) in [
            (
                a.intersect(&j).unwrap(),
                ga.intersect_via_elimination(&gj).unwrap(),
            ),
            (j.colon(&a).unwrap(), gj.colon_via_elimination(&ga).unwrap()),
            (
                a.saturate(&j).unwrap(),
                ga.saturate_via_elimination(&gj).unwrap(),
            ),
        ] {
            assert!(fast.is_monomial());
            assert!(fast.equals(&slow).unwrap(), "{inst:?}");
            assert_eq!(
                fast.hilbert_numerator().unwrap(),
                slow.hilbert_numerator().unwrap()
            );
        }
    }
}

#[test]
fn relabelling_variables_permutes_lengths() {
    // swapping x and y maps every length to itself
    for i in 0..10u64 {
        let inst = RandomInstance::generate(
            derive_seed(12, i),
            SampleShape {
                max_vars: 2,
                ..SampleShape::default()
            },
        );
        let p = inst.instantiate().unwrap();
        let swap = |s: &String| s.replace('x', "#").replace('y', "x").replace('#', "y");
        let mirrored = RandomInstance {
            vars: inst.vars.clone(),
            j: inst.j.iter().map(swap).collect(),
            ideals: inst
                .ideals
                .iter()
                .map(|g| g.iter().map(swap).collect())
                .collect(),
        };
        let q = mirrored.instantiate().unwrap();
        let n = vec![2; p.s() + 1];
        assert_eq!(
            p.hilbert_value(&n).unwrap(),
            q.hilbert_value(&n).unwrap(),
            "{inst:?}"
        );
    }
}

#[test]
fn dual_path_tables_agree() {
    for i in 0..10u64 {
        let inst = RandomInstance::generate(derive_seed(13, i), SampleShape::default());
        let p = inst.instantiate().unwrap();
        let g = p.general_path().unwrap();
        let base = 1 + (i % 3) as u32;
        assert_eq!(
            p.evaluate_grid(base, 2).unwrap(),
            g.evaluate_grid(base, 2).unwrap(),
            "{inst:?}"
        );
    }
}

fn substitute(f: &Polynomial, images: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let mut out = Polynomial::zero(ring);
    for (m, c) in f.terms() {
        let mut t = Polynomial::constant(ring, *c as i64);
        for (v, img) in images.iter().enumerate() {
            t = t.mul(&img.pow(m.exp(v) as u32));
        }
        out = out.add(&t);
    }
    out
}

#[test]
fn lengths_survive_a_linear_change_of_coordinates() {
    use mixmult::local::LocalRingModel;
    use mixmult::mixed::ProblemInstance;
    for i in 0..6u64 {
        let inst = RandomInstance::generate(
            derive_seed(14, i),
            SampleShape {
                max_vars: 2,
                max_ideals: 1,
                max_degree: 3,
            },
        );
        let p = inst.instantiate().unwrap();
        let c = inst.context().unwrap();
        let images = [c.parse("x + 3*y").unwrap(), c.parse("y - 5*x").unwrap()];
        let moved = |id: &Ideal| {
            Ideal::new(
                c.ring(),
                id.gens().iter().map(|g| substitute(g, &images)).collect(),
            )
            .unwrap()
        };
        let q = ProblemInstance::new(
            LocalRingModel::regular(c.clone()),
            moved(p.j()),
            p.ideals().iter().map(moved).collect(),
        )
        .unwrap();
        assert!(!q.is_monomial());
        for n in [[0, 1], [1, 1], [2, 1], [1, 2]] {
            assert_eq!(
                p.hilbert_value(&n).unwrap(),
                q.hilbert_value(&n).unwrap(),
                "{inst:?} at {n:?}"
            );
        }
    }
}
