//! The generator system of a presentation accepts exactly the scalar
//! assignments that the morphism-level oracle accepts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use interleavings_core::matching::{match_distance, witness_from_matching};
use interleavings_core::oracle::{check_interleaving, probe_solutions, ScalarAssignment};
use interleavings_core::variety::unreduced_constraints;
use interleavings_core::{
    build_variety, IntervalModule, PersistenceModule, Rational, StatusHint, VarietyPresentation,
};

fn small_interval(rng: &mut ChaCha8Rng) -> IntervalModule {
    loop {
        let a = Rational::new(rng.gen_range(0..=16), 2).unwrap();
        let b = Rational::new(rng.gen_range(0..=16), 2).unwrap();
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            return IntervalModule::new(lo, hi).unwrap();
        }
    }
}

fn module(rng: &mut ChaCha8Rng, name: &str) -> PersistenceModule {
    let size = rng.gen_range(1..=2);
    PersistenceModule::new(name, (0..size).map(|_| small_interval(rng)).collect())
}

fn scalar(rng: &mut ChaCha8Rng) -> Rational {
    let (u, v) = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 4)][rng.gen_range(0..5)];
    Rational::new(u, v).unwrap()
}

/// Candidates near the variety: the matching witness, its rescalings, and
/// random perturbations of free entries.
fn candidates(
    rng: &mut ChaCha8Rng,
    p: &VarietyPresentation,
    base: &ScalarAssignment,
) -> Vec<ScalarAssignment> {
    let free = p.free_variables();
    let mut out = vec![ScalarAssignment::new(), base.clone()];
    for _ in 0..12 {
        let mut a = base.clone();
        for v in &free {
            match rng.gen_range(0..4) {
                0 => a.set(*v, Rational::zero()),
                1 => a.set(*v, scalar(rng)),
                _ => {}
            }
        }
        out.push(a);
    }
    out.into_iter()
        .map(|mut a| {
            for v in &p.forced_zero {
                a.set(*v, Rational::zero());
            }
            a
        })
        .collect()
}

#[test]
fn generators_and_oracle_accept_the_same_assignments() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut accepted, mut rejected) = (0, 0);
    for _ in 0..250 {
        let m = module(&mut rng, "M");
        let n = module(&mut rng, "N");
        let d = match_distance(&m, &n);
        for e in [
            Rational::zero(),
            d.distance.clone(),
            &d.distance + Rational::new(1, 2).unwrap(),
            Rational::new(rng.gen_range(0..=16), 4).unwrap(),
        ] {
            let p = build_variety(&m, &n, &e).unwrap();
            let base = witness_from_matching(&m, &n, &e, &d.matching);
            for a in candidates(&mut rng, &p, &base) {
                let oracle = check_interleaving(&m, &n, &e, &a).unwrap();
                assert_eq!(p.accepts(&a), oracle, "{m:?} vs {n:?} at {e}: {a:?}");
                if oracle {
                    accepted += 1;
                } else {
                    rejected += 1;
                }
            }
        }
    }
    assert!(accepted > 500 && rejected > 500, "{accepted} accepted, {rejected} rejected");
}

#[test]
fn substitution_preserves_the_solution_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let m = module(&mut rng, "M");
        let n = module(&mut rng, "N");
        let e = Rational::new(rng.gen_range(0..=12), 4).unwrap();
        let p = build_variety(&m, &n, &e).unwrap();
        let raw = unreduced_constraints(&m, &n, &e).unwrap();
        let base = witness_from_matching(&m, &n, &e, &match_distance(&m, &n).matching);
        for a in candidates(&mut rng, &p, &base) {
            let raw_ok = raw.iter().all(|g| g.evaluate(|v| a.value(v)).is_zero());
            assert_eq!(p.accepts(&a), raw_ok);
        }
    }
}

#[test]
fn provably_empty_means_no_interleaving_at_that_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    for _ in 0..300 {
        let m = module(&mut rng, "M");
        let n = module(&mut rng, "N");
        let e = Rational::new(rng.gen_range(0..=12), 4).unwrap();
        let p = build_variety(&m, &n, &e).unwrap();
        let d = match_distance(&m, &n).distance;
        if p.status_hint == StatusHint::ProvablyEmpty {
            seen += 1;
            assert!(e < d, "{m:?} vs {n:?}: empty at {e} but distance {d}");
        }
        if e >= d {
            assert!(probe_solutions(&p, 200, 1).witness().is_some(), "{m:?} vs {n:?} at {e}");
        }
    }
    assert!(seen > 20);
}
