mod support;

use equidissect::combo::{enumerate_types, EnumerateOptions};
use equidissect::geom::{oriented_area_polygon, oriented_area_triangle, rat_to_f64, AffinePoint, ProjectivePoint};
use equidissect::homotopy::{make_square_subsystem, newton_refine, HomotopyProblem};
use equidissect::{build_system, AreaAssignment, CombinatorialType, Instance, SquareStrategy, C64};
use proptest::prelude::*;

fn c() -> impl Strategy<Value = C64> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(re, im)| C64::new(re, im))
}

fn point() -> impl Strategy<Value = AffinePoint> {
    (c(), c()).prop_map(|(x, y)| AffinePoint::new(x, y))
}

/// Shoelace formula, written out independently.
fn shoelace(points: &[AffinePoint]) -> C64 {
    let n = points.len();
    (0..n)
        .map(|i| points[i].x * points[(i + 1) % n].y - points[(i + 1) % n].x * points[i].y)
        .sum::<C64>()
        * 0.5
}

fn scale(points: &[AffinePoint]) -> f64 {
    points.iter().map(|p| p.magnitude()).fold(1.0, f64::max).powi(2)
}

proptest! {
    #[test]
    fn polygon_area_matches_shoelace(points in prop::collection::vec(point(), 3..9), r1 in point(), r2 in point()) {
        let s = scale(&points) * points.len() as f64;
        let a = oriented_area_polygon(&points, &r1);
        let b = oriented_area_polygon(&points, &r2);
        prop_assert!((a - b).norm() <= 1e-12 * s);
        prop_assert!((a - shoelace(&points)).norm() <= 1e-12 * s);
    }

    #[test]
    fn triangle_area_symmetries(p in point(), q in point(), r in point()) {
        let s = oriented_area_triangle(&p, &q, &r);
        let tol = 1e-12 * scale(&[p, q, r]);
        prop_assert!((s - oriented_area_triangle(&q, &r, &p)).norm() <= tol);
        prop_assert!((s + oriented_area_triangle(&q, &p, &r)).norm() <= tol);
    }

    #[test]
    fn canonicalization_is_scale_invariant(x in c(), y in c(), z in c(), k in c()) {
        prop_assume!(k.norm() > 1e-3 && x.norm() + y.norm() + z.norm() > 1e-3);
        let p = ProjectivePoint::new(x, y, z).unwrap().canonicalize();
        let q = ProjectivePoint::new(x * k, y * k, z * k).unwrap().canonicalize();
        for (a, b) in p.coords().iter().zip(q.coords()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
        prop_assert_eq!(p.canonicalize(), p);
    }

    #[test]
    fn jacobian_matches_finite_differences(which in 0usize..40, seed in prop::collection::vec(c(), 6)) {
        let types: Vec<CombinatorialType> = [(4, 1), (3, 2), (4, 2)]
            .into_iter()
            .flat_map(|(n, i)| enumerate_types(n, i, &EnumerateOptions::default()).unwrap())
            .collect();
        let g = types[which % types.len()].clone();
        let p = if g.boundary_count() == 4 { support::square() } else { support::triangle() };
        let inst = Instance::new(g.clone(), p.clone(), AreaAssignment::equal(&g, &p)).unwrap();
        let sys = build_system(&inst).unwrap().numeric();
        let x: Vec<C64> = seed.iter().take(sys.nvars()).map(|v| v * 0.1).collect();
        let jac = sys.jacobian(&x).unwrap();
        let fd = support::fd_jacobian(|y| sys.evaluate(y).unwrap(), &x, 1e-6);
        let norm = jac.iter().fold(1.0f64, |m, v| m.max(v.norm()));
        for i in 0..jac.nrows() {
            for j in 0..jac.ncols() {
                prop_assert!((jac[(i, j)] - fd[i][j]).norm() <= 1e-6 * norm);
            }
        }
    }

    #[test]
    fn area_sum_identity_over_complex_points(which in 0usize..40, xs in prop::collection::vec(c(), 6)) {
        let types: Vec<CombinatorialType> = [(4, 1), (4, 2), (5, 1)]
            .into_iter()
            .flat_map(|(n, i)| enumerate_types(n, i, &EnumerateOptions::default()).unwrap())
            .collect();
        let g = types[which % types.len()].clone();
        let p = if g.boundary_count() == 4 { support::square() } else { support::pentagon() };
        let inst = Instance::new(g.clone(), p.clone(), AreaAssignment::equal(&g, &p)).unwrap();
        let sys = build_system(&inst).unwrap();
        let x: Vec<C64> = xs.iter().take(sys.unknown_count()).copied().collect();
        let areas = inst.areas.for_type(&g).unwrap();
        // Each equation is S_f(x) - a_f; add the prescribed areas back.
        let values = sys.evaluate(&x).unwrap();
        let mut total: C64 = sys
            .equations()
            .iter()
            .zip(values)
            .map(|(e, v)| v + rat_to_f64(&areas[e.face_index]))
            .sum();
        for k in sys.constants_report() {
            total += rat_to_f64(&(&k.residual + &areas[k.face_index]));
        }
        let area = rat_to_f64(&p.area());
        let s = 1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.norm())).powi(2);
        prop_assert!((total - area).norm() <= 1e-10 * s * g.face_count() as f64);
    }
}

#[test]
fn start_roots_solve_the_start_system() {
    let g = support::square_two_interior();
    let p = support::square();
    let inst = Instance::new(g.clone(), p.clone(), AreaAssignment::equal(&g, &p)).unwrap();
    let sys = build_system(&inst).unwrap();
    for strategy in [SquareStrategy::Greedy, SquareStrategy::Faces(vec![0, 1, 2, 3])] {
        let sel = make_square_subsystem(&sys, &strategy).unwrap();
        let prob = HomotopyProblem::new(sys.numeric().subsystem(&sel.selected), 7).unwrap();
        let roots = prob.start_roots();
        assert_eq!(roots.len(), prob.degrees().iter().map(|&d| d as usize).product::<usize>());
        for r in roots {
            assert!(prob.start_residual(&r) < 1e-14);
        }
        assert!((prob.gamma().norm() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn newton_contracts_near_cone_root() {
    let g = CombinatorialType::cone(4);
    let a = AreaAssignment::aligned(&g, [(1, 8), (1, 4), (3, 8), (1, 4)].iter().map(|&(p, q)| support::q(p, q)).collect()).unwrap();
    let sys = build_system(&Instance::new(g, support::square(), a).unwrap()).unwrap().numeric();
    let out = newton_refine(&sys, &[C64::new(0.49, 0.0), C64::new(0.26, 0.0)], 5, 1e-14).unwrap();
    assert!(out.iterations <= 5);
    assert!((out.x[0] - C64::new(0.5, 0.0)).norm() < 1e-14);
    assert!((out.x[1] - C64::new(0.25, 0.0)).norm() < 1e-14);
}
