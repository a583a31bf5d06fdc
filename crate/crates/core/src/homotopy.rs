//! Total-degree homotopy continuation with the gamma trick.
//!
//! `H(x, t) = gamma * t * g(x) + (1 - t) * f(x)` is tracked from `t = 1`
//! (start system `g_j = x_j^{d_j} - 1`) to `t = 0` (target `f`) with an
//! Euler predictor and a short Newton corrector.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{AffinePoint, ProjectivePoint, C64};
use crate::poly::{unknowns_to_points, NumericSystem, PolynomialSystem};

#[derive(Debug, Clone, PartialEq)]
pub struct TrackerSettings {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub growth: f64,
    pub successes_before_growth: usize,
    pub corrector_iterations: usize,
    /// Relative Newton step size accepted by the corrector.
    pub corrector_tol: f64,
    /// Coordinate modulus beyond which a path is declared divergent.
    pub divergence_threshold: f64,
    pub refine_tol: f64,
    pub refine_iterations: usize,
    /// Residual below which a refined endpoint counts as converged.
    pub converged_residual: f64,
    pub max_steps: usize,
    /// Below this `t` steps are relative: each step at most halves `t`, and
    /// the minimum step scales with `t`. Slowly escaping paths (growth like
    /// `t^(-1/2)`) need this to cross the divergence threshold.
    pub endgame_start: f64,
    /// Tracking stops here and the endpoint is refined on the target.
    pub end_t: f64,
}

impl Default for TrackerSettings {
    fn default() -> Self {
        TrackerSettings {
            initial_step: 1e-2,
            max_step: 5e-2,
            min_step: 1e-14,
            growth: 1.5,
            successes_before_growth: 3,
            corrector_iterations: 3,
            corrector_tol: 1e-9,
            divergence_threshold: 1e8,
            refine_tol: 1e-12,
            refine_iterations: 20,
            converged_residual: 1e-10,
            max_steps: 200_000,
            endgame_start: 1e-6,
            end_t: 1e-60,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HomotopyProblem {
    target: NumericSystem,
    degrees: Vec<u32>,
    gamma: C64,
    seed: u64,
}

impl HomotopyProblem {
    pub fn new(target: NumericSystem, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta: f64 = rng.gen_range(0.0..2.0 * PI);
        Self::with_gamma(target, C64::from_polar(1.0, theta), seed)
    }

    pub fn with_gamma(target: NumericSystem, gamma: C64, seed: u64) -> Result<Self> {
        if target.len() != target.nvars() {
            return Err(Error::Precondition(format!(
                "homotopy target must be square: {} equations, {} unknowns",
                target.len(),
                target.nvars()
            )));
        }
        let degrees: Vec<u32> = target.polys().iter().map(|p| p.total_degree()).collect();
        if let Some(j) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::Precondition(format!("equation {j} is constant")));
        }
        Ok(HomotopyProblem { target, degrees, gamma, seed })
    }

    pub fn target(&self) -> &NumericSystem {
        &self.target
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn gamma(&self) -> C64 {
        self.gamma
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Bezout number: product of the equation degrees.
    pub fn path_count(&self) -> usize {
        self.degrees.iter().map(|&d| d as usize).product()
    }

    /// All roots of `x_j^{d_j} = 1`, in lexicographic order of root indices.
    pub fn start_roots(&self) -> Vec<Vec<C64>> {
        let mut roots: Vec<Vec<C64>> = vec![vec![]];
        for &d in &self.degrees {
            let unity: Vec<C64> =
                (0..d).map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)).collect();
            roots = roots
                .into_iter()
                .flat_map(|r| {
                    unity.iter().map(move |u| {
                        let mut r2 = r.clone();
                        r2.push(*u);
                        r2
                    })
                })
                .collect();
        }
        roots
    }

    pub fn start_residual(&self, x: &[C64]) -> f64 {
        self.start_values(x).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    fn start_values(&self, x: &[C64]) -> DVector<C64> {
        DVector::from_iterator(
            x.len(),
            x.iter().zip(&self.degrees).map(|(xj, &d)| xj.powu(d) - C64::new(1.0, 0.0)),
        )
    }

    fn start_jacobian_diag(&self, x: &[C64]) -> Vec<C64> {
        x.iter().zip(&self.degrees).map(|(xj, &d)| xj.powu(d - 1) * d as f64).collect()
    }

    fn h(&self, x: &[C64], t: f64) -> DVector<C64> {
        let g = self.start_values(x);
        let f = self.target.evaluate_vec(x);
        g * (self.gamma * t) + f * C64::new(1.0 - t, 0.0)
    }

    fn hx(&self, x: &[C64], t: f64) -> DMatrix<C64> {
        let mut j = self.target.jacobian(x).expect("dimension checked") * C64::new(1.0 - t, 0.0);
        for (k, d) in self.start_jacobian_diag(x).into_iter().enumerate() {
            j[(k, k)] += self.gamma * t * d;
        }
        j
    }

    /// dH/dt
    fn ht(&self, x: &[C64]) -> DVector<C64> {
        self.start_values(x) * self.gamma - self.target.evaluate_vec(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathStatus {
    Converged,
    Diverged,
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    pub index: usize,
    pub start_root: Vec<C64>,
    pub status: PathStatus,
    /// Refined root (converged) or last finite sample (diverged/failed).
    pub endpoint: Vec<C64>,
    pub t_final: f64,
    pub newton_residual: f64,
    pub steps: usize,
    /// Canonicalized `[x : y : 1]` per interior point, for diverged paths.
    pub projective_limits: Vec<ProjectivePoint>,
    pub failure: Option<String>,
}

impl PathResult {
    pub fn max_magnitude(&self) -> f64 {
        self.endpoint.iter().fold(0.0, |m, c| m.max(c.norm()))
    }
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn max_abs(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |m, c| m.max(c.norm()))
}

fn solve_square(a: DMatrix<C64>, b: DVector<C64>) -> Option<DVector<C64>> {
    let x = a.lu().solve(&b)?;
    x.iter().all(|c| c.is_finite()).then_some(x)
}

/// Corrector: at most `iters` Newton steps on `H(., t)`.
fn correct(p: &HomotopyProblem, x: &mut Vec<C64>, t: f64, s: &TrackerSettings) -> bool {
    let mut last_step = f64::INFINITY;
    for _ in 0..s.corrector_iterations {
        let rhs = -p.h(x, t);
        let Some(dx) = solve_square(p.hx(x, t), rhs) else { return false };
        let step = norm(dx.as_slice());
        if step > last_step {
            return false;
        }
        for (xi, d) in x.iter_mut().zip(dx.iter()) {
            *xi += d;
        }
        if step <= s.corrector_tol * (1.0 + norm(x)) {
            return true;
        }
        last_step = step;
    }
    false
}

fn projective_limits(x: &[C64]) -> Vec<ProjectivePoint> {
    unknowns_to_points(x)
        .iter()
        .map(|p: &AffinePoint| ProjectivePoint::from_affine(p).canonicalize())
        .collect()
}

/// Track one path from start root `x0`.
pub fn track_path(
    p: &HomotopyProblem,
    index: usize,
    x0: Vec<C64>,
    s: &TrackerSettings,
) -> PathResult {
    let start_root = x0.clone();
    let mut x = x0;
    let mut t = 1.0f64;
    let mut h = s.initial_step;
    let mut successes = 0usize;
    let mut steps = 0usize;
    let fail = |x: Vec<C64>, t: f64, steps: usize, why: String| PathResult {
        index,
        start_root: start_root.clone(),
        status: PathStatus::Failed,
        endpoint: x,
        t_final: t,
        newton_residual: f64::NAN,
        steps,
        projective_limits: vec![],
        failure: Some(why),
    };
    while t > s.end_t {
        if steps >= s.max_steps {
            return fail(x, t, steps, format!("step budget {} exhausted", s.max_steps));
        }
        let in_endgame = t < s.endgame_start;
        let floor = if in_endgame { s.min_step * t / s.endgame_start } else { s.min_step };
        if h < floor {
            return fail(x, t, steps, format!("step size fell below {floor:e}"));
        }
        steps += 1;
        let dt = if in_endgame { h.min(0.5 * t) } else { h.min(t - 0.5 * s.endgame_start) };
        // Failures shrink the step actually taken, not the unused cap.
        h = dt;
        let t_new = t - dt;
        // Euler predictor: dx/dt = -Hx^{-1} Ht, moving t -> t - dt.
        let Some(xdot) = solve_square(p.hx(&x, t), -p.ht(&x)) else {
            h *= 0.5;
            successes = 0;
            continue;
        };
        let mut trial: Vec<C64> = x.iter().zip(xdot.iter()).map(|(xi, d)| xi - d * dt).collect();
        if correct(p, &mut trial, t_new, s) {
            x = trial;
            t = t_new;
            successes += 1;
            if successes >= s.successes_before_growth {
                h = (h * s.growth).min(s.max_step);
                successes = 0;
            }
            if max_abs(&x) > s.divergence_threshold {
                let residual = norm(p.target.evaluate_vec(&x).as_slice());
                return PathResult {
                    index,
                    start_root,
                    status: PathStatus::Diverged,
                    projective_limits: projective_limits(&x),
                    endpoint: x,
                    t_final: t,
                    newton_residual: residual,
                    steps,
                    failure: None,
                };
            }
        } else {
            h *= 0.5;
            successes = 0;
        }
    }
    match newton_refine(&p.target, &x, s.refine_iterations, s.refine_tol) {
        Ok(out) if out.residual < s.converged_residual => PathResult {
            index,
            start_root,
            status: PathStatus::Converged,
            endpoint: out.x,
            t_final: 0.0,
            newton_residual: out.residual,
            steps,
            projective_limits: vec![],
            failure: None,
        },
        Ok(out) => {
            let mut r = fail(out.x, 0.0, steps, format!("endpoint residual {:e}", out.residual));
            r.newton_residual = out.residual;
            r
        }
        Err(e) => fail(x, 0.0, steps, e.to_string()),
    }
}

/// Track every start root; results are ordered by start-root index.
pub fn track_all(p: &HomotopyProblem, s: &TrackerSettings) -> Vec<PathResult> {
    p.start_roots()
        .into_iter()
        .enumerate()
        .map(|(k, x0)| track_path(p, k, x0, s))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOutcome {
    pub x: Vec<C64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Singular values below this fraction of the largest mark a singular Jacobian.
pub const SINGULAR_RATIO: f64 = 1e-12;

/// Newton's method; least-squares (SVD) steps when overdetermined.
pub fn newton_refine(
    sys: &NumericSystem,
    x0: &[C64],
    max_iter: usize,
    tol: f64,
) -> Result<NewtonOutcome> {
    if x0.len() != sys.nvars() {
        return Err(Error::DimensionMismatch { expected: sys.nvars(), got: x0.len() });
    }
    let mut x = x0.to_vec();
    let mut iterations = 0;
    if sys.nvars() == 0 {
        return Ok(NewtonOutcome { x, residual: sys.residual_norm(&[])?, iterations });
    }
    for _ in 0..max_iter {
        let j = sys.jacobian(&x)?;
        let f = sys.evaluate_vec(&x);
        let svd = j.svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
        if sys.len() < sys.nvars() || ratio < SINGULAR_RATIO {
            return Err(Error::SingularJacobian { ratio });
        }
        if norm(f.as_slice()) <= tol {
            break;
        }
        let dx = svd.solve(&(-f), 0.0).map_err(|e| Error::Precondition(e.to_string()))?;
        iterations += 1;
        for (xi, d) in x.iter_mut().zip(dx.iter()) {
            *xi += d;
        }
        // stagnation at machine precision
        if norm(dx.as_slice()) <= 1e-16 * (1.0 + norm(&x)) {
            break;
        }
    }
    let residual = sys.residual_norm(&x)?;
    Ok(NewtonOutcome { x, residual, iterations })
}

/// How the square subsystem is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SquareStrategy {
    /// Lowest degree first, then most newly covered unknowns, then face order,
    /// restricted to equations that raise the generic Jacobian rank.
    #[default]
    Greedy,
    /// Use exactly these face indices (0-based, into the type's face list).
    Faces(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareSelection {
    /// Indices into `PolynomialSystem::equations()`.
    pub selected: Vec<usize>,
    pub leftover: Vec<usize>,
}

impl SquareSelection {
    pub fn selected_faces(&self, s: &PolynomialSystem) -> Vec<usize> {
        self.selected.iter().map(|&k| s.equations()[k].face_index).collect()
    }
}

fn generic_point(n: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1e55);
    (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn numeric_rank(m: &DMatrix<C64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-8 * smax).count()
}

/// Pick `unknown_count` equations covering every unknown.
pub fn make_square_subsystem(
    s: &PolynomialSystem,
    strategy: &SquareStrategy,
) -> Result<SquareSelection> {
    let m = s.unknown_count();
    let eqs = s.equations();
    let selected = match strategy {
        SquareStrategy::Faces(faces) => {
            let mut sel = Vec::new();
            for &f in faces {
                let k = eqs.iter().position(|e| e.face_index == f).ok_or_else(|| {
                    Error::Precondition(format!("face {} has no equation over the unknowns", f + 1))
                })?;
                if !sel.contains(&k) {
                    sel.push(k);
                }
            }
            if sel.len() != m {
                return Err(Error::Precondition(format!(
                    "explicit selection has {} equations for {m} unknowns",
                    sel.len()
                )));
            }
            sel
        }
        SquareStrategy::Greedy => {
            let jac = s.jacobian(&generic_point(m))?;
            let mut sel: Vec<usize> = Vec::new();
            let mut covered = vec![false; m];
            let mut rank = 0;
            while sel.len() < m {
                let candidates: Vec<usize> = (0..eqs.len()).filter(|k| !sel.contains(k)).collect();
                if candidates.is_empty() {
                    break;
                }
                let key = |k: usize| {
                    let new_cover =
                        (0..m).filter(|&v| !covered[v] && eqs[k].numeric.involves(v)).count();
                    (eqs[k].degree(), std::cmp::Reverse(new_cover), k)
                };
                let raises_rank: Vec<usize> = candidates
                    .iter()
                    .copied()
                    .filter(|&k| {
                        let mut rows = sel.clone();
                        rows.push(k);
                        numeric_rank(&jac.select_rows(rows.iter())) > rank
                    })
                    .collect();
                let pool = if raises_rank.is_empty() { &candidates } else { &raises_rank };
                let best = *pool.iter().min_by_key(|&&k| key(k)).expect("nonempty pool");
                sel.push(best);
                rank = numeric_rank(&jac.select_rows(sel.iter()));
                for (v, c) in covered.iter_mut().enumerate() {
                    *c |= eqs[best].numeric.involves(v);
                }
            }
            sel
        }
    };
    // An explicit selection is taken as given, even if it leaves an unknown
    // out: such systems are how degenerations are provoked on purpose.
    let uncovered: Vec<&str> = (0..m)
        .filter(|_| matches!(strategy, SquareStrategy::Greedy))
        .filter(|&v| !selected.iter().any(|&k| eqs[k].numeric.involves(v)))
        .map(|v| s.variables()[v].as_str())
        .collect();
    if !uncovered.is_empty() {
        return Err(Error::Uncovered(uncovered.join(", ")));
    }
    let leftover = (0..eqs.len()).filter(|k| !selected.contains(k)).collect();
    Ok(SquareSelection { selected, leftover })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combo::CombinatorialType;
    use crate::geom::{rat, Polygon, RationalPoint};
    use crate::poly::{build_system, AreaAssignment, Instance, MultiPoly};

    fn square() -> Polygon {
        Polygon::new(vec![
            RationalPoint::from_ints(0, 0),
            RationalPoint::from_ints(1, 0),
            RationalPoint::from_ints(1, 1),
            RationalPoint::from_ints(0, 1),
        ])
        .unwrap()
    }

    fn cone_system(areas: [(i64, i64); 4]) -> PolynomialSystem {
        let g = CombinatorialType::cone(4);
        let a = AreaAssignment::aligned(&g, areas.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap();
        build_system(&Instance::new(g, square(), a).unwrap()).unwrap()
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn greedy_selection_on_cone() {
        let s = cone_system([(1, 8), (1, 4), (3, 8), (1, 4)]);
        let sel = make_square_subsystem(&s, &SquareStrategy::Greedy).unwrap();
        assert_eq!(sel.selected, vec![0, 1]);
        assert_eq!(sel.leftover, vec![2, 3]);
    }

    #[test]
    fn greedy_on_empty_system() {
        let g = CombinatorialType::fan(4, 0);
        let a = AreaAssignment::aligned(&g, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let s = build_system(&Instance::new(g, square(), a).unwrap()).unwrap();
        let sel = make_square_subsystem(&s, &SquareStrategy::Greedy).unwrap();
        assert!(sel.selected.is_empty());
        assert!(sel.leftover.is_empty());
    }

    #[test]
    fn explicit_parallel_faces_diverge() {
        let s = cone_system([(1, 8), (3, 8), (1, 8), (3, 8)]);
        // faces (1,2,5) and (3,4,5) only constrain y5: two parallel lines
        let sel = make_square_subsystem(&s, &SquareStrategy::Faces(vec![0, 2])).unwrap();
        assert_eq!(sel.leftover, vec![1, 3]);
        let p = HomotopyProblem::new(s.numeric().subsystem(&sel.selected), 0).unwrap();
        let res = track_all(&p, &TrackerSettings::default());
        assert_eq!(res[0].status, PathStatus::Diverged);
        assert!(res[0].projective_limits[0].coords()[2].norm() < 1e-8);
        let err = make_square_subsystem(&s, &SquareStrategy::Faces(vec![0])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn cone_path_converges() {
        let s = cone_system([(1, 8), (1, 4), (3, 8), (1, 4)]);
        let sel = make_square_subsystem(&s, &SquareStrategy::Greedy).unwrap();
        let p = HomotopyProblem::new(s.numeric().subsystem(&sel.selected), 0).unwrap();
        assert_eq!(p.path_count(), 1);
        let res = track_all(&p, &TrackerSettings::default());
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].status, PathStatus::Converged);
        assert!((res[0].endpoint[0] - c(0.5)).norm() < 1e-12);
        assert!((res[0].endpoint[1] - c(0.25)).norm() < 1e-12);
    }

    #[test]
    fn parallel_lines_diverge() {
        // y5 = 1/4 and y5 = 3/4 (faces (1,2,5), (3,4,5)); x5 escapes.
        let g = CombinatorialType::cone(4);
        let a = AreaAssignment::aligned(&g, vec![rat(1, 8), rat(3, 8), rat(1, 8), rat(3, 8)]).unwrap();
        let s = build_system(&Instance::new(g, square(), a).unwrap()).unwrap();
        let sys = NumericSystem::new(2, vec![s.equations()[0].numeric.clone(), s.equations()[2].numeric.clone()]);
        let p = HomotopyProblem::new(sys, 3).unwrap();
        let res = track_all(&p, &TrackerSettings::default());
        assert_eq!(res[0].status, PathStatus::Diverged);
        assert!(res[0].max_magnitude() > 1e8);
        assert!(res[0].projective_limits[0].coords()[2].norm() < 1e-8);
    }

    #[test]
    fn start_roots_satisfy_start_system() {
        let sys = NumericSystem::new(
            2,
            vec![
                MultiPoly::from_terms(2, [(vec![1, 1], c(1.0)), (vec![0, 0], c(-1.0))]),
                MultiPoly::from_terms(2, [(vec![0, 3], c(1.0)), (vec![1, 0], c(2.0))]),
            ],
        );
        let p = HomotopyProblem::new(sys, 1).unwrap();
        let roots = p.start_roots();
        assert_eq!(roots.len(), 6);
        for r in &roots {
            assert!(p.start_residual(r) < 1e-14);
        }
    }

    #[test]
    fn newton_examples() {
        let s = cone_system([(1, 8), (1, 4), (3, 8), (1, 4)]);
        let sq = s.numeric().subsystem(&[0, 1]);
        let out = newton_refine(&sq, &[c(0.49), c(0.26)], 5, 1e-14).unwrap();
        assert!((out.x[0] - c(0.5)).norm() < 1e-14 && (out.x[1] - c(0.25)).norm() < 1e-14);
        assert!(out.iterations <= 5);
        let at_root = newton_refine(&sq, &[c(0.5), c(0.25)], 5, 1e-14).unwrap();
        assert!(at_root.residual < 1e-15);
        assert_eq!(at_root.x, vec![c(0.5), c(0.25)]);
        // overdetermined: all four equations
        let full = newton_refine(&s.numeric(), &[c(0.4), c(0.3)], 10, 1e-14).unwrap();
        assert!(full.residual < 1e-14);

        let double = NumericSystem::new(
            1,
            vec![MultiPoly::from_terms(1, [(vec![2], c(1.0))]), MultiPoly::from_terms(1, [(vec![2], c(1.0))])],
        );
        assert!(matches!(
            newton_refine(&double, &[c(0.0)], 5, 1e-14),
            Err(Error::SingularJacobian { .. })
        ));
    }

    #[test]
    fn non_square_target_rejected() {
        let s = cone_system([(1, 8), (1, 4), (3, 8), (1, 4)]);
        assert!(HomotopyProblem::new(s.numeric(), 0).is_err());
    }
}
