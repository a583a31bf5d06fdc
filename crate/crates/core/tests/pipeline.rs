mod support;

use equidissect::degen::{area_sum_audit, inspect, InspectOptions};
use equidissect::exact::{certify, eval_integer_poly};
use equidissect::geom::rat;
use equidissect::solve::{roundtrip_oracle, solve, SolveConfig};
use equidissect::{AreaAssignment, CombinatorialType, Instance, Polygon, SquareStrategy, C64};
use num_bigint::BigInt;
use num_traits::Zero;
use support::{degenerating_family, pentagon, q, square, square_two_interior, triangle};

fn instance(g: CombinatorialType, p: Polygon, areas: &[(i64, i64)]) -> Instance {
    let a = AreaAssignment::aligned(&g, areas.iter().map(|&(n, d)| q(n, d)).collect()).unwrap();
    Instance::new(g, p, a).unwrap()
}

fn equal(g: CombinatorialType, p: Polygon) -> Instance {
    let a = AreaAssignment::equal(&g, &p);
    Instance::new(g, p, a).unwrap()
}

#[test]
fn hand_instances_and_certificates() {
    let cases = [
        (instance(CombinatorialType::cone(4), square(), &[(1, 8), (1, 4), (3, 8), (1, 4)]), (0.5, 0.25), ["2t - 1", "4t - 1"]),
        (equal(CombinatorialType::cone(4), square()), (0.5, 0.5), ["2t - 1", "2t - 1"]),
        (equal(CombinatorialType::cone(3), triangle()), (1.0 / 3.0, 1.0 / 3.0), ["3t - 1", "3t - 1"]),
    ];
    for (inst, (x, y), texts) in cases {
        let set = solve(&inst, &SolveConfig::default()).unwrap();
        assert_eq!(set.solutions.len(), 1);
        let s = &set.solutions[0];
        assert!(s.is_geometric() && s.isolation.isolated);
        assert!((s.coordinates[0].x - C64::new(x, 0.0)).norm() < 1e-9);
        assert!((s.coordinates[0].y - C64::new(y, 0.0)).norm() < 1e-9);
        let certs = certify(&inst, &set.solutions).unwrap();
        let got: Vec<&str> = certs[0].coordinates.iter().map(|c| c.text.as_str()).collect();
        assert_eq!(got, texts);
    }
}

#[test]
fn roundtrip_on_test_types() {
    let cases = [
        (CombinatorialType::cone(4), square()),
        (square_two_interior(), square()),
        (CombinatorialType::cone(5), pentagon()),
        (CombinatorialType::cone(3), triangle()),
    ];
    for (g, p) in cases {
        for seed in 0..5 {
            let r = roundtrip_oracle(&g, &p, seed, &SolveConfig::default()).unwrap();
            assert!(r.passed(), "{:?} seed {seed}: distance {}", g.faces(), r.distance);
            assert_eq!(r.solutions.counts.failed, 0);
            if g.interior_count() == 1 {
                assert_eq!(r.solutions.solutions.len(), 1);
            }
        }
    }
}

#[test]
fn certificates_vanish_on_rational_samples() {
    for seed in 0..3 {
        let r = roundtrip_oracle(&square_two_interior(), &square(), seed, &SolveConfig::default()).unwrap();
        let k = r.recovered.unwrap();
        let certs = certify(&r.instance, &r.solutions.solutions).unwrap();
        let values: Vec<_> = r.sample.iter().flat_map(|p| [p.x.clone(), p.y.clone()]).collect();
        for (c, v) in certs[k].coordinates.iter().zip(&values) {
            let poly: Vec<BigInt> = c.polynomial.iter().map(|s| s.parse().unwrap()).collect();
            assert!(eval_integer_poly(&poly, v).is_zero(), "{} at {v}", c.text);
            assert!(c.residual <= c.residual_bound);
        }
    }
}

#[test]
fn scaling_equivariance() {
    let lambda = rat(3, 2);
    let r = roundtrip_oracle(&square_two_interior(), &square(), 11, &SolveConfig::default()).unwrap();
    let base = r.solutions;
    let scaled = Instance::new(
        r.instance.ty.clone(),
        r.instance.polygon.scaled(&lambda).unwrap(),
        r.instance.areas.scaled(&(&lambda * &lambda)),
    )
    .unwrap();
    let other = solve(&scaled, &SolveConfig::default()).unwrap();
    assert_eq!(base.solutions.len(), other.solutions.len());
    for s in &base.solutions {
        let target: Vec<C64> = s.unknowns().iter().map(|v| v * 1.5).collect();
        assert!(other.solutions.iter().any(|t| {
            t.unknowns().iter().zip(&target).all(|(a, b)| (a - b).norm() < 1e-9)
        }));
    }
}

#[test]
fn determinism_and_seed_stability() {
    let inst = equal(square_two_interior(), square());
    let a = solve(&inst, &SolveConfig { seed: 5, ..Default::default() }).unwrap();
    let b = solve(&inst, &SolveConfig { seed: 5, ..Default::default() }).unwrap();
    assert_eq!(a, b);
    for seed in 0..20 {
        let s = solve(&inst, &SolveConfig { seed, ..Default::default() }).unwrap();
        assert_eq!(s.solutions.len(), a.solutions.len(), "seed {seed}");
        for (x, y) in s.solutions.iter().zip(&a.solutions) {
            assert!(x.unknowns().iter().zip(y.unknowns()).all(|(u, v)| (u - v).norm() < 1e-6));
        }
        let c = s.counts;
        assert_eq!(c.converged + c.diverged + c.failed, c.total);
        assert_eq!(c.failed, 0);
    }
}

#[test]
fn no_interior_vertices() {
    let g = CombinatorialType::new(4, 4, vec![[0, 1, 2], [0, 2, 3]]).validated().unwrap();
    let ok = solve(&instance(g.clone(), square(), &[(1, 2), (1, 2)]), &SolveConfig::default()).unwrap();
    assert_eq!(ok.solutions.len(), 1);
    assert!(ok.solutions[0].is_geometric() && ok.infeasible.is_none());
    let bad = solve(&instance(g, square(), &[(1, 4), (3, 4)]), &SolveConfig::default()).unwrap();
    assert!(bad.solutions.is_empty());
    assert!(bad.infeasible.is_some());
}

#[test]
fn area_sum_mismatch_is_infeasible() {
    let set = solve(&instance(CombinatorialType::cone(4), square(), &[(1, 4), (1, 4), (1, 4), (1, 2)]), &SolveConfig::default())
        .unwrap();
    assert!(set.infeasible.as_deref().unwrap().contains("sum"));
    assert!(set.solutions.is_empty());
}

#[test]
fn parallel_lines_send_the_cone_apex_to_infinity() {
    let inst = instance(CombinatorialType::cone(4), square(), &[(1, 8), (3, 8), (1, 8), (3, 8)]);
    let cfg = SolveConfig { square: SquareStrategy::Faces(vec![0, 2]), ..Default::default() };
    let set = solve(&inst, &cfg).unwrap();
    assert_eq!(set.counts.diverged, 1);
    let r = inspect(&inst, &set.divergences[0], &InspectOptions::default()).unwrap();
    assert_eq!(r.points_at_infinity, vec![4]);
    assert!(r.limits[0].limit.coords()[2].norm() < 1e-6);
    assert!(r.faces.iter().all(|f| !f.is_g_face));
}

#[test]
fn two_interior_family_degenerates() {
    let inst = instance(degenerating_family(), triangle(), &[(1, 10); 5]);
    for seed in 0..10 {
        let cfg = SolveConfig { seed, square: SquareStrategy::Faces(vec![0, 1, 2, 3]), ..Default::default() };
        let set = solve(&inst, &cfg).unwrap();
        assert_eq!(set.counts.total, 4);
        assert_eq!(set.counts.failed, 0);
        assert_eq!(set.solutions.len(), 1);
        assert!(set.solutions[0].is_geometric());
        let opts = InspectOptions { imposed_faces: Some(set.square_faces.clone()), ..Default::default() };
        let mut escaping_five = 0;
        for path in &set.divergences {
            let r = inspect(&inst, path, &opts).unwrap();
            assert!(!r.points_at_infinity.is_empty());
            assert!(r.h_vertices.starts_with(&[0, 1, 2]));
            if let Some(m) = r.max_g_face_mismatch() {
                assert!(m < 1e-5, "seed {seed}: G-face mismatch {m}");
            }
            if r.points_at_infinity == vec![4] {
                escaping_five += 1;
                assert!(r.max_collinearity().unwrap() < 1e-4);
                let audit = area_sum_audit(&r, &inst);
                assert!(audit.non_g_defect > 1e-3);
                assert!(audit.prescribed_matches_polygon);
            }
        }
        assert!(escaping_five >= 1, "seed {seed}");
    }
}
