//! End-to-end enumeration of the realizations of a combinatorial type with
//! prescribed face areas.
//!
//! Pipeline: build the area equations, pick a square subsystem, track every
//! total-degree path, filter endpoints by the leftover equations, refine on
//! the full overdetermined system, dedupe, then classify each solution.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combo::CombinatorialType;
use crate::error::{Error, Result};
use crate::geom::{
    locate_point, orient2d_exact, segments_intersect, segments_overlap_at_shared_endpoint,
    AffinePoint, Containment, Polygon, RationalPoint, C64,
};
use crate::homotopy::{
    make_square_subsystem, newton_refine, track_all, HomotopyProblem, PathResult, PathStatus,
    SquareSelection, SquareStrategy, TrackerSettings,
};
use crate::poly::{
    build_system, points_to_unknowns, unknowns_to_points, AreaAssignment, Instance, NumericSystem,
    PolynomialSystem,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub seed: u64,
    pub tracker: TrackerSettings,
    pub square: SquareStrategy,
    /// Leftover-equation residual allowed before refinement.
    pub filter_tol: f64,
    pub refine_tol: f64,
    pub refine_iterations: usize,
    /// Full-system residual every reported solution must meet.
    pub residual_tol: f64,
    pub dedup_tol: f64,
    pub real_tol: f64,
    /// Relative singular-value threshold for the numerical rank.
    pub rank_tol: f64,
    /// Denominator cap used when rounding real coordinates to rationals.
    pub rational_denominator_cap: i64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            seed: 0,
            tracker: TrackerSettings::default(),
            square: SquareStrategy::Greedy,
            filter_tol: 1e-6,
            refine_tol: 1e-12,
            refine_iterations: 20,
            residual_tol: 1e-9,
            dedup_tol: 1e-6,
            real_tol: 1e-9,
            rank_tol: 1e-8,
            rational_denominator_cap: 1_000_000_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeometricReport {
    pub is_geometric: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub unknowns: usize,
    pub isolated: bool,
    pub singular_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// One point per interior vertex, in vertex order.
    pub coordinates: Vec<AffinePoint>,
    pub residual: f64,
    pub is_real: bool,
    pub geometric: GeometricReport,
    pub isolation: RankReport,
    /// Exact rational coordinates when rounding satisfies every equation exactly.
    pub exact: Option<Vec<RationalPoint>>,
    /// Homotopy paths that landed on this solution.
    pub paths: Vec<usize>,
}

impl Solution {
    pub fn is_geometric(&self) -> bool {
        self.geometric.is_geometric
    }

    pub fn unknowns(&self) -> Vec<C64> {
        points_to_unknowns(&self.coordinates)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PathCounts {
    pub total: usize,
    pub converged: usize,
    pub diverged: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub divergences: Vec<PathResult>,
    pub failures: Vec<PathResult>,
    pub counts: PathCounts,
    /// Face indices of the square subsystem.
    pub square_faces: Vec<usize>,
    pub leftover_faces: Vec<usize>,
    pub degrees: Vec<u32>,
    pub infeasible: Option<String>,
    pub warnings: Vec<String>,
}

impl SolutionSet {
    pub fn geometric(&self) -> impl Iterator<Item = &Solution> {
        self.solutions.iter().filter(|s| s.is_geometric())
    }
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn rationalize(x: f64, max_den: i64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e18 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a;
        if frac.abs() < 1e-300 || ((p1 as f64) / (q1 as f64) - x).abs() <= f64::EPSILON * x.abs() {
            break;
        }
        r = 1.0 / frac;
    }
    if q1 == 0 {
        return BigRational::from_integer(BigInt::from(x.round() as i64));
    }
    BigRational::new(BigInt::from(p1), BigInt::from(q1))
}

fn real_rational_points(coords: &[AffinePoint], cap: i64) -> Vec<RationalPoint> {
    coords
        .iter()
        .map(|p| RationalPoint::new(rationalize(p.x.re, cap), rationalize(p.y.re, cap)))
        .collect()
}

/// All vertex positions: boundary from the polygon, then interior points.
pub fn all_vertices(p: &Polygon, interior: &[RationalPoint]) -> Vec<RationalPoint> {
    p.vertices().iter().cloned().chain(interior.iter().cloned()).collect()
}

/// Exact check that interior positions realize `g` as a proper triangulation of `p`.
pub fn check_geometric_exact(
    g: &CombinatorialType,
    p: &Polygon,
    interior: &[RationalPoint],
) -> GeometricReport {
    let mut diagnostics = Vec::new();
    let verts = all_vertices(p, interior);
    for f in g.faces() {
        if !orient2d_exact(&verts[f[0]], &verts[f[1]], &verts[f[2]]).is_positive() {
            diagnostics.push(format!(
                "face ({}, {}, {}) has non-positive oriented area",
                f[0] + 1,
                f[1] + 1,
                f[2] + 1
            ));
        }
    }
    for (k, q) in interior.iter().enumerate() {
        let loc = locate_point(q, p.vertices());
        if loc != Containment::Inside {
            diagnostics.push(format!(
                "vertex {} lies {} the polygon",
                g.boundary_count() + k + 1,
                if loc == Containment::Boundary { "on the boundary of" } else { "outside" }
            ));
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().into_iter().collect();
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            let (e1, e2) = (edges[a], edges[b]);
            let shared: Vec<usize> =
                [e1.0, e1.1].into_iter().filter(|v| *v == e2.0 || *v == e2.1).collect();
            let bad = match shared.as_slice() {
                [] => segments_intersect(&verts[e1.0], &verts[e1.1], &verts[e2.0], &verts[e2.1]),
                [s] => {
                    let o1 = if e1.0 == *s { e1.1 } else { e1.0 };
                    let o2 = if e2.0 == *s { e2.1 } else { e2.0 };
                    segments_overlap_at_shared_endpoint(&verts[*s], &verts[o1], &verts[o2])
                }
                _ => false,
            };
            if bad {
                diagnostics.push(format!(
                    "edges {}-{} and {}-{} cross",
                    e1.0 + 1,
                    e1.1 + 1,
                    e2.0 + 1,
                    e2.1 + 1
                ));
            }
        }
    }
    GeometricReport { is_geometric: diagnostics.is_empty(), diagnostics }
}

/// Geometric check of a numeric solution; complex points are rejected.
pub fn check_geometric(
    g: &CombinatorialType,
    p: &Polygon,
    coords: &[AffinePoint],
    config: &SolveConfig,
) -> GeometricReport {
    if coords.iter().any(|c| c.x.im.abs() >= config.real_tol || c.y.im.abs() >= config.real_tol) {
        return GeometricReport {
            is_geometric: false,
            diagnostics: vec!["solution is not real".into()],
        };
    }
    check_geometric_exact(g, p, &real_rational_points(coords, config.rational_denominator_cap))
}

/// Numerical rank of the full Jacobian at `x`.
pub fn isolation_check(sys: &NumericSystem, x: &[C64], rank_tol: f64) -> Result<RankReport> {
    let unknowns = sys.nvars();
    if unknowns == 0 {
        return Ok(RankReport { rank: 0, unknowns, isolated: true, singular_values: vec![] });
    }
    let j: DMatrix<C64> = sys.jacobian(x)?;
    let sv: Vec<f64> = j.svd(false, false).singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let rank = if smax == 0.0 { 0 } else { sv.iter().filter(|&&s| s > rank_tol * smax).count() };
    Ok(RankReport { rank, unknowns, isolated: rank == unknowns, singular_values: sv })
}

fn max_dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

fn lex_key(x: &[C64]) -> Vec<f64> {
    x.iter().flat_map(|c| [c.re, c.im]).collect()
}

fn infeasibility(system: &PolynomialSystem) -> Option<String> {
    let mut reasons = Vec::new();
    for c in system.constants_report() {
        if !c.residual.is_zero() {
            reasons.push(format!(
                "all-boundary face ({}, {}, {}) has residual {}",
                c.face[0] + 1,
                c.face[1] + 1,
                c.face[2] + 1,
                c.residual
            ));
        }
    }
    if let Some((total, area)) = system.area_mismatch() {
        reasons.push(format!("prescribed areas sum to {total} but the polygon area is {area}"));
    }
    (!reasons.is_empty()).then(|| reasons.join("; "))
}

/// Full pipeline for one instance.
pub fn solve(inst: &Instance, config: &SolveConfig) -> Result<SolutionSet> {
    let system = build_system(inst)?;
    let infeasible = infeasibility(&system);
    let full = system.numeric();
    let mut warnings = Vec::new();
    if system.unknown_count() == 0 {
        let mut solutions = Vec::new();
        if system.constants_report().iter().all(|c| c.residual.is_zero()) {
            solutions.push(Solution {
                coordinates: vec![],
                residual: 0.0,
                is_real: true,
                geometric: check_geometric_exact(&inst.ty, &inst.polygon, &[]),
                isolation: isolation_check(&full, &[], config.rank_tol)?,
                exact: Some(vec![]),
                paths: vec![],
            });
        }
        return Ok(SolutionSet {
            solutions,
            divergences: vec![],
            failures: vec![],
            counts: PathCounts::default(),
            square_faces: vec![],
            leftover_faces: vec![],
            degrees: vec![],
            infeasible,
            warnings,
        });
    }

    let selection: SquareSelection = make_square_subsystem(&system, &config.square)?;
    let square = full.subsystem(&selection.selected);
    let problem = HomotopyProblem::new(square, config.seed)?;
    let paths = track_all(&problem, &config.tracker);
    let mut counts = PathCounts { total: paths.len(), ..Default::default() };
    let mut divergences = Vec::new();
    let mut failures = Vec::new();
    let mut candidates: Vec<(Vec<C64>, usize)> = Vec::new();
    for path in paths {
        match path.status {
            PathStatus::Converged => {
                counts.converged += 1;
                let passes = selection
                    .leftover
                    .iter()
                    .all(|&k| full.polys()[k].eval(&path.endpoint).norm() <= config.filter_tol);
                if passes {
                    candidates.push((path.endpoint.clone(), path.index));
                }
            }
            PathStatus::Diverged => {
                counts.diverged += 1;
                divergences.push(path);
            }
            PathStatus::Failed => {
                counts.failed += 1;
                failures.push(path);
            }
        }
    }
    if counts.failed > 0 {
        warnings.push(format!("{} of {} paths failed", counts.failed, counts.total));
    }

    let mut refined: Vec<(Vec<C64>, f64, Vec<usize>)> = Vec::new();
    for (x0, idx) in candidates {
        let x = match newton_refine(&full, &x0, config.refine_iterations, config.refine_tol) {
            Ok(out) => out.x,
            Err(e) => {
                warnings.push(format!("path {idx}: full-system refinement failed ({e})"));
                x0
            }
        };
        let residual = full.residual_norm(&x)?;
        if residual >= config.residual_tol {
            warnings.push(format!("path {idx}: full-system residual {residual:e} rejected"));
            continue;
        }
        match refined.iter_mut().find(|(y, _, _)| max_dist(y, &x) < config.dedup_tol) {
            Some(existing) => existing.2.push(idx),
            None => refined.push((x, residual, vec![idx])),
        }
    }
    refined.sort_by(|a, b| {
        lex_key(&a.0).partial_cmp(&lex_key(&b.0)).unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut solutions = Vec::new();
    for (mut x, residual, paths) in refined {
        let is_real = x.iter().all(|c| c.im.abs() < config.real_tol);
        if is_real {
            for c in x.iter_mut() {
                c.im = 0.0;
            }
        }
        let coordinates = unknowns_to_points(&x);
        let geometric = if is_real {
            check_geometric(&inst.ty, &inst.polygon, &coordinates, config)
        } else {
            GeometricReport { is_geometric: false, diagnostics: vec!["solution is not real".into()] }
        };
        let exact = if is_real {
            let q = real_rational_points(&coordinates, config.rational_denominator_cap);
            let values: Vec<BigRational> =
                q.iter().flat_map(|p| [p.x.clone(), p.y.clone()]).collect();
            system
                .equations()
                .iter()
                .all(|e| e.exact.eval(&values).is_zero())
                .then_some(q)
        } else {
            None
        };
        solutions.push(Solution {
            isolation: isolation_check(&full, &x, config.rank_tol)?,
            coordinates,
            residual,
            is_real,
            geometric,
            exact,
            paths,
        });
    }

    Ok(SolutionSet {
        solutions,
        divergences,
        failures,
        counts,
        square_faces: selection.selected_faces(&system),
        leftover_faces: selection.leftover.iter().map(|&k| system.equations()[k].face_index).collect(),
        degrees: problem.degrees().to_vec(),
        infeasible,
        warnings,
    })
}

/// Random embedding of `g` in `p` with rational interior points: a
/// barycentric (Tutte) map with random positive weights, rounded and checked.
pub fn sample_configuration(
    g: &CombinatorialType,
    p: &Polygon,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
) -> Result<Vec<RationalPoint>> {
    let n = g.boundary_count();
    let m = g.interior_count();
    if m == 0 {
        let report = check_geometric_exact(g, p, &[]);
        return if report.is_geometric { Ok(vec![]) } else { Err(Error::Sampling(1)) };
    }
    let rot = g.rotation_system();
    let boundary: Vec<(f64, f64)> = p
        .vertices()
        .iter()
        .map(|v| (crate::geom::rat_to_f64(&v.x), crate::geom::rat_to_f64(&v.y)))
        .collect();
    for attempt in 0..max_attempts {
        let mut a = DMatrix::<f64>::zeros(m, m);
        let mut bx = nalgebra::DVector::<f64>::zeros(m);
        let mut by = nalgebra::DVector::<f64>::zeros(m);
        for k in 0..m {
            let v = n + k;
            let weights: Vec<f64> = rot[v].iter().map(|_| rng.gen_range(0.2..5.0)).collect();
            let total: f64 = weights.iter().sum();
            a[(k, k)] = 1.0;
            for (&w, &wt) in rot[v].iter().zip(&weights) {
                let lam = wt / total;
                if w < n {
                    bx[k] += lam * boundary[w].0;
                    by[k] += lam * boundary[w].1;
                } else {
                    a[(k, w - n)] -= lam;
                }
            }
        }
        let lu = a.lu();
        let (Some(xs), Some(ys)) = (lu.solve(&bx), lu.solve(&by)) else { continue };
        // Coarse grid first so exact arithmetic stays cheap; refine on retries.
        let den: i64 = [64, 256, 1024, 8192][(attempt / 4).min(3)];
        let round = |v: f64| BigRational::new(BigInt::from((v * den as f64).round() as i64), BigInt::from(den));
        let pts: Vec<RationalPoint> =
            (0..m).map(|k| RationalPoint::new(round(xs[k]), round(ys[k]))).collect();
        if check_geometric_exact(g, p, &pts).is_geometric {
            return Ok(pts);
        }
    }
    Err(Error::Sampling(max_attempts))
}

/// Exact face areas induced by placing the interior vertices at `interior`.
pub fn induced_areas(g: &CombinatorialType, p: &Polygon, interior: &[RationalPoint]) -> AreaAssignment {
    let verts = all_vertices(p, interior);
    AreaAssignment::new(
        g.faces()
            .iter()
            .map(|f| {
                (*f, crate::geom::oriented_area_triangle_exact(&verts[f[0]], &verts[f[1]], &verts[f[2]]))
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub sample: Vec<RationalPoint>,
    pub instance: Instance,
    pub solutions: SolutionSet,
    /// Index of the recovered solution, if any.
    pub recovered: Option<usize>,
    pub distance: f64,
    pub all_isolated: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.recovered.is_some_and(|k| self.solutions.solutions[k].is_geometric()) && self.all_isolated
    }
}

/// Recovery tolerance for a sampled configuration.
pub const ORACLE_TOL: f64 = 1e-9;

/// Sample a rational realization of `g`, derive its areas exactly, solve, and
/// look for the sample among the solutions.
pub fn roundtrip_oracle(
    g: &CombinatorialType,
    p: &Polygon,
    seed: u64,
    config: &SolveConfig,
) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = sample_configuration(g, p, &mut rng, 64)?;
    let areas = induced_areas(g, p, &sample);
    let instance = Instance::new(g.clone(), p.clone(), areas)?;
    let solutions = solve(&instance, config)?;
    let target: Vec<C64> = points_to_unknowns(&sample.iter().map(|q| q.to_affine()).collect::<Vec<_>>());
    let mut recovered = None;
    let mut distance = f64::INFINITY;
    for (k, s) in solutions.solutions.iter().enumerate() {
        let d = max_dist(&s.unknowns(), &target);
        if d < distance {
            distance = d;
            if d < ORACLE_TOL {
                recovered = Some(k);
            }
        }
    }
    let all_isolated = solutions.solutions.iter().all(|s| s.isolation.isolated);
    Ok(OracleReport { sample, instance, solutions, recovered, distance, all_isolated })
}
