mod common;

use rand::Rng;
use wmge::constraint_graph::build_constraint_graph;
use wmge::geometry::{check, check_unit_length, check_wmge, metrics, CheckOptions};
use wmge::matching::{hopcroft_karp, konig_cover};
use wmge::oracle::{
    min_cover_bruteforce, min_objective_bruteforce, min_perimeter_by_extents,
    min_perimeter_by_placement, unit_length_feasible, Objective, OracleError, Witness,
    DEFAULT_CEILING, LENGTH_TOLERANCE,
};
use wmge::{derive, PathPair};

use common::{identity_family, random_pair, rng};

fn pp(px: &[usize], py: &[usize]) -> PathPair {
    PathPair::new(px.to_vec(), py.to_vec()).unwrap()
}

#[test]
fn placement_and_extent_oracles_agree() {
    for n in 1..=5 {
        for p in identity_family(n) {
            let side = (n as u64 - 1).max(1);
            let a = min_perimeter_by_placement(&p, side, DEFAULT_CEILING).unwrap();
            let b = min_perimeter_by_extents(&p, DEFAULT_CEILING).unwrap();
            assert_eq!(a.optimum, b.optimum, "{p:?}");
            for r in [&a, &b] {
                let emb = r.embedding().expect("witness");
                assert!(check_wmge(&p, emb).unwrap().valid);
                assert_eq!(Some(emb.perimeter() as u128), r.optimum.as_int());
            }
        }
    }
}

#[test]
fn placement_optimum_is_monotone_in_side() {
    for p in identity_family(4) {
        let mut last = None;
        for side in 1..=4 {
            let r = match min_perimeter_by_placement(&p, side, DEFAULT_CEILING) {
                Ok(r) => r.optimum.as_int(),
                Err(OracleError::NoPlacement { .. }) => None,
                Err(e) => panic!("{e}"),
            };
            if let Some(prev) = last {
                assert!(r.is_some_and(|v| v <= prev), "{p:?}");
            }
            if r.is_some() {
                last = r;
            }
        }
        assert!(last.is_some());
    }
}

#[test]
fn objective_optimum_is_monotone_in_side() {
    let p = pp(&[0, 1, 2], &[0, 2, 1]);
    let small = min_objective_bruteforce(&p, Objective::TotalLength, 1, DEFAULT_CEILING).unwrap();
    let large = min_objective_bruteforce(&p, Objective::TotalLength, 2, DEFAULT_CEILING).unwrap();
    assert!(
        large.optimum.as_float().unwrap() <= small.optimum.as_float().unwrap() + LENGTH_TOLERANCE
    );
}

#[test]
fn triangle_objectives() {
    let p = pp(&[0, 1, 2], &[0, 2, 1]);
    let r = min_objective_bruteforce(&p, Objective::MaxEdge, 2, DEFAULT_CEILING).unwrap();
    assert_eq!(r.optimum.as_int(), Some(2));
    let emb = r.embedding().unwrap();
    assert!(
        check(&p, emb, CheckOptions::STRICT_PLANARITY)
            .unwrap()
            .valid
    );
    assert_eq!(metrics(&p, emb).max_sq_edge, 2);

    let r = min_objective_bruteforce(&p, Objective::TotalLength, 2, DEFAULT_CEILING).unwrap();
    let want = 2.0 + 2f64.sqrt();
    assert!((r.optimum.as_float().unwrap() - want).abs() <= LENGTH_TOLERANCE);
    assert!((metrics(&p, r.embedding().unwrap()).total_length - want).abs() <= LENGTH_TOLERANCE);

    let r = unit_length_feasible(&p, 2, DEFAULT_CEILING).unwrap();
    assert_eq!(r.optimum.as_bool(), Some(false));
    assert!(r.witness.is_none());
}

#[test]
fn unit_feasible_cases() {
    for p in [
        pp(&[0, 1], &[0, 1]),
        pp(&[0, 1], &[1, 0]),
        pp(&[0, 1, 2, 3], &[1, 0, 3, 2]),
    ] {
        let r = unit_length_feasible(&p, 1, DEFAULT_CEILING).unwrap();
        assert_eq!(r.optimum.as_bool(), Some(true), "{p:?}");
        let emb = r.embedding().unwrap();
        assert!(check_unit_length(&p, emb));
        assert!(
            check(&p, emb, CheckOptions::STRICT_PLANARITY)
                .unwrap()
                .valid
        );
    }
}

#[test]
fn ceiling_guards_fire() {
    let p = pp(
        &(0..8).collect::<Vec<_>>(),
        &(0..8).rev().collect::<Vec<_>>(),
    );
    assert!(matches!(
        min_perimeter_by_placement(&p, 7, 10),
        Err(OracleError::CeilingExceeded { .. })
    ));
    assert!(matches!(
        min_objective_bruteforce(&p, Objective::MaxEdge, 7, 1000),
        Err(OracleError::CeilingExceeded { .. })
    ));
    assert!(matches!(
        unit_length_feasible(&p, 7, 1000),
        Err(OracleError::CeilingExceeded { .. })
    ));
}

#[test]
fn cover_oracle_matches_konig_on_constraint_graphs() {
    let mut r = rng(3);
    for _ in 0..500 {
        let n = r.gen_range(1..=12);
        let p = random_pair(&mut r, n);
        let g = build_constraint_graph(&p, &derive(&p));
        let view = g.bipartite_view();
        let m = hopcroft_karp(&view.graph);
        let c = konig_cover(&view.graph, &m).unwrap();
        let o = min_cover_bruteforce(&view.graph).unwrap();
        assert_eq!(o.optimum.as_int(), Some(c.size() as u128), "{p:?}");
        let Some(Witness::Cover(w)) = &o.witness else {
            panic!("cover witness expected")
        };
        assert!(wmge::matching::verify_cover(&view.graph, w));
        assert_eq!(w.size(), c.size());
    }
}
