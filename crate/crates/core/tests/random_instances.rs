use std::time::Instant;

use mixmult::fc::{positivity, verify_reduction, Positivity, SearchOptions};
use mixmult::mixed::{mixed_multiplicities, Route};
use mixmult::rng::derive_seed;
use mixmult::sample::{RandomInstance, SampleShape};

fn instances(count: u64, seed: u64) -> Vec<RandomInstance> {
    (0..count)
        .map(|i| RandomInstance::generate(derive_seed(seed, i), SampleShape::default()))
        .collect()
}

#[test]
fn first_type_is_multiplicity_of_the_saturation() {
    let start = Instant::now();
    for inst in instances(20, 41) {
        let p = inst.instantiate().unwrap();
        let table = p
            .build_table(p.default_base0(), p.default_window())
            .unwrap();
        let report = mixed_multiplicities(&table, Route::DirectTable).unwrap();
        let mut k = vec![0; p.s() + 1];
        k[0] = p.ell() - 1;
        let hs = p.model().hilbert_samuel(p.j(), p.saturation()).unwrap();
        assert_eq!(report.get(&k), Some(hs.mult), "{inst:?}");
    }
    eprintln!("first type: {:?}", start.elapsed());
}

#[test]
fn tables_satisfy_difference_laws() {
    for inst in instances(20, 42) {
        let p = inst.instantiate().unwrap();
        let table = p
            .build_table(p.default_base0(), p.default_window())
            .unwrap();
        assert!(table.top_differences_vanish());
        let r = mixed_multiplicities(&table, Route::DirectTable).unwrap();
        assert!(r.entries.iter().all(|(_, e)| *e >= 0));
        assert!(r.entries.iter().any(|(_, e)| *e > 0));
        if p.s() == 2 {
            let q = inst.swapped().instantiate().unwrap();
            let t2 = q.build_table(table.base[0], table.window).unwrap();
            let r2 = mixed_multiplicities(&t2, Route::DirectTable).unwrap();
            for (k, e) in &r.entries {
                assert_eq!(r2.get(&[k[0], k[2], k[1]]), Some(*e), "{inst:?}");
            }
        }
    }
}

#[test]
fn positivity_matches_the_table() {
    // Zero entries must never admit a sequence (that would be an
    // inconsistency error); positive entries are certified by search, which
    // may miss when no homogeneous general element exists.
    let start = Instant::now();
    let (mut positives, mut certified) = (0, 0);
    for inst in instances(20, 43) {
        let p = inst.instantiate().unwrap();
        let table = p
            .build_table(p.default_base0(), p.default_window())
            .unwrap();
        let report = mixed_multiplicities(&table, Route::DirectTable).unwrap();
        let opts = SearchOptions {
            fc1_base: Some(table.base[0]),
            ..SearchOptions::default()
        };
        for (k, e) in &report.entries {
            let seeds: Vec<u64> = (0..5).collect();
            let pr = positivity(&p, k, &seeds, &opts, Some(&table)).unwrap();
            if *e == 0 {
                assert_eq!(pr.outcome, Positivity::ZeroCertified, "{inst:?} k = {k:?}");
            } else {
                positives += 1;
                certified += (pr.outcome == Positivity::PositiveCertified) as u32;
                assert_ne!(pr.outcome, Positivity::ZeroCertified);
            }
        }
    }
    eprintln!(
        "positivity: {certified}/{positives} certified in {:?}",
        start.elapsed()
    );
    assert!(certified * 10 >= positives * 9);
}

#[test]
fn reduction_route_agrees_when_it_finishes() {
    let opts = SearchOptions::default();
    for inst in instances(8, 44) {
        let p = inst.instantiate().unwrap();
        let table = p
            .build_table(p.default_base0(), p.default_window())
            .unwrap();
        for k in mixmult::fc::all_types(&p) {
            let r = verify_reduction(&p, &table, &k, 9, &opts).unwrap();
            assert_ne!(r.agrees(), Some(false), "{inst:?} k = {k:?}: {r:?}");
        }
    }
}
