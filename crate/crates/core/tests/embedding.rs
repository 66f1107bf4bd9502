mod common;

use proptest::prelude::*;
use rand::Rng;
use wmge::embedder::{
    brass_baseline, check_extents, coordinates_from_extents, solve_min_perimeter, ExtentAssignment,
};
use wmge::geometry::check_wmge;
use wmge::oracle::{min_perimeter_by_extents, min_perimeter_by_placement, DEFAULT_CEILING};
use wmge::PathPair;

use common::{identity_family, random_pair, rng};

#[test]
fn optimal_against_placement_oracle() {
    for n in 1..=4 {
        for p in identity_family(n) {
            let s = solve_min_perimeter(&p).unwrap();
            let side = (n as u64 - 1).max(1);
            let o = min_perimeter_by_placement(&p, side, DEFAULT_CEILING).unwrap();
            assert_eq!(
                Some(s.metrics.perimeter as u128),
                o.optimum.as_int(),
                "{p:?}"
            );
        }
    }
}

#[test]
fn optimal_against_extent_oracle_all_pairs() {
    for n in 1..=5 {
        for px in common::permutations(n) {
            for py in common::permutations(n) {
                let p = PathPair::new(px.clone(), py).unwrap();
                let s = solve_min_perimeter(&p).unwrap();
                let o = min_perimeter_by_extents(&p, DEFAULT_CEILING).unwrap();
                assert_eq!(
                    Some(s.metrics.perimeter as u128),
                    o.optimum.as_int(),
                    "{p:?}"
                );
            }
        }
    }
}

#[test]
fn clamping_preserves_feasibility() {
    let mut r = rng(5);
    let mut tried = 0;
    while tried < 2_000 {
        let n = r.gen_range(2..12);
        let p = random_pair(&mut r, n);
        let e = ExtentAssignment {
            d_x: (0..n - 1).map(|_| r.gen_range(0..4)).collect(),
            d_y: (0..n - 1).map(|_| r.gen_range(0..4)).collect(),
        };
        if check_extents(&p, &e).is_err() {
            continue;
        }
        tried += 1;
        let c = e.clamped();
        check_extents(&p, &c).unwrap();
        assert!(c.total() <= e.total());
        for emb in [
            coordinates_from_extents(&p, &e),
            coordinates_from_extents(&p, &c),
        ] {
            assert!(check_wmge(&p, &emb.unwrap()).unwrap().valid, "{p:?} {e:?}");
        }
    }
}

fn arb_pair(max_n: usize) -> impl Strategy<Value = PathPair> {
    (1..=max_n).prop_flat_map(|n| {
        let ids: Vec<usize> = (0..n).collect();
        (Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle())
            .prop_map(|(px, py)| PathPair::new(px, py).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solution_is_valid_and_bounded(p in arb_pair(60)) {
        let s = solve_min_perimeter(&p).unwrap();
        let n = p.n() as i64;
        prop_assert!(check_wmge(&p, &s.embedding).unwrap().valid);
        prop_assert!(s.metrics.perimeter <= 4 * (n - 1));
        prop_assert_eq!(s.extents.total() as i64, s.metrics.width + s.metrics.height);
        prop_assert_eq!(s.metrics.perimeter, s.embedding.perimeter());
        prop_assert_eq!(s.metrics.cover_size, s.metrics.matching_size);
        prop_assert!(s.extents.d_x.iter().chain(&s.extents.d_y).all(|&d| d <= 1));
    }

    #[test]
    fn solving_is_deterministic(p in arb_pair(60)) {
        let (a, b) = (solve_min_perimeter(&p).unwrap(), solve_min_perimeter(&p).unwrap());
        prop_assert_eq!(a.embedding, b.embedding);
        prop_assert_eq!(a.extents, b.extents);
    }

    #[test]
    fn validity_is_translation_invariant(p in arb_pair(30), dx in -1000i64..1000, dy in -1000i64..1000) {
        let s = solve_min_perimeter(&p).unwrap();
        let moved = s.embedding.translated(dx, dy);
        prop_assert!(check_wmge(&p, &moved).unwrap().valid);
        prop_assert_eq!(moved.perimeter(), s.embedding.perimeter());
    }

    #[test]
    fn swapping_paths_transposes(p in arb_pair(30)) {
        let s = solve_min_perimeter(&p).unwrap();
        let q = p.swapped();
        let t = solve_min_perimeter(&q).unwrap();
        prop_assert_eq!(s.metrics.perimeter, t.metrics.perimeter);
        prop_assert!(check_wmge(&q, &s.embedding.transposed()).unwrap().valid);
    }

    #[test]
    fn baseline_is_valid(p in arb_pair(40)) {
        let b = brass_baseline(&p);
        prop_assert!(check_wmge(&p, &b).unwrap().valid);
        let n = p.n() as i64;
        prop_assert_eq!(b.perimeter(), 4 * (n - 1));
    }
}
