//! Inspection of diverging homotopy paths.
//!
//! A diverged path is read as an approximation of a point of the projective
//! configuration variety with some interior vertices on the line at infinity.
//! The finite vertices span a subgraph `H'`; its component `H` through the
//! boundary cuts the polygon into faces, each a union of faces of `G`. For
//! every bounded face `f` of `H` the report compares the prescribed area
//! `S_f` with the area `S'_f` enclosed by the limit positions of its boundary
//! walk, and measures how close a non-`G` face's boundary is to a line.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combo::{CombinatorialType, Face};
use crate::error::{Error, Result};
use crate::geom::{oriented_area_polygon, rat_to_f64, AffinePoint, ProjectivePoint, C64};
use crate::homotopy::{PathResult, PathStatus};
use crate::poly::{unknowns_to_points, Instance};

#[derive(Debug, Clone, PartialEq)]
pub struct InspectOptions {
    /// `|z|` below which a canonicalized limit counts as a point at infinity.
    pub infinity_tol: f64,
    /// Divergence threshold the tracker used; finite points within a factor
    /// of ten of it make the classification ambiguous.
    pub divergence_threshold: f64,
    /// Faces of the tracked square subsystem, in equation order. Equation `j`
    /// was paired with unknown `j` in the start system, so it holds in the
    /// limit only if that unknown's vertex stays finite.
    pub imposed_faces: Option<Vec<usize>>,
}

impl Default for InspectOptions {
    fn default() -> Self {
        InspectOptions { infinity_tol: 1e-6, divergence_threshold: 1e8, imposed_faces: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexLimit {
    pub vertex: usize,
    pub limit: ProjectivePoint,
    pub at_infinity: bool,
    /// Modulus of the last affine sample.
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HFace {
    /// Closed boundary walk, counterclockwise; vertices may repeat.
    pub walk: Vec<usize>,
    /// Indices of the faces of `G` inside this face.
    pub g_faces: Vec<usize>,
    pub is_g_face: bool,
    /// Sum of the prescribed areas of the enclosed `G` faces.
    pub prescribed: BigRational,
    /// Oriented area of the walk at the limit positions.
    pub limit_area: C64,
    /// For a `G` face: whether its equation was imposed while tracking with
    /// a start-system partner that stays finite.
    pub imposed: bool,
    /// Relative spread of the walk's points away from a line (`σ_min/σ_max`);
    /// only computed for faces that are not faces of `G`.
    pub collinearity: Option<f64>,
}

impl HFace {
    pub fn defect(&self) -> C64 {
        C64::new(rat_to_f64(&self.prescribed), 0.0) - self.limit_area
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationReport {
    pub path_index: usize,
    pub t_final: f64,
    pub limits: Vec<VertexLimit>,
    pub points_at_infinity: Vec<usize>,
    pub finite_points: Vec<usize>,
    pub h_prime_vertices: Vec<usize>,
    pub h_prime_edges: Vec<(usize, usize)>,
    pub h_vertices: Vec<usize>,
    pub h_edges: Vec<(usize, usize)>,
    /// Bounded faces of `H`.
    pub faces: Vec<HFace>,
    pub ambiguous: bool,
    pub notes: Vec<String>,
}

impl DegenerationReport {
    /// Largest collinearity deviation over faces of `H` that are not faces of `G`.
    pub fn max_collinearity(&self) -> Option<f64> {
        self.faces.iter().filter_map(|f| f.collinearity).reduce(f64::max)
    }

    /// Largest `|S'_f - S_f|` over imposed `G` faces of `H`.
    pub fn max_g_face_mismatch(&self) -> Option<f64> {
        self.faces
            .iter()
            .filter(|f| f.is_g_face && f.imposed)
            .map(|f| f.defect().norm())
            .reduce(f64::max)
    }
}

fn union_find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Spread of points away from their best-fit complex line.
pub fn collinearity_deviation(points: &[AffinePoint]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let k = points.len() as f64;
    let cx = points.iter().map(|p| p.x).sum::<C64>() / k;
    let cy = points.iter().map(|p| p.y).sum::<C64>() / k;
    let m = DMatrix::from_fn(points.len(), 2, |r, c| {
        if c == 0 {
            points[r].x - cx
        } else {
            points[r].y - cy
        }
    });
    let sv = m.svd(false, false).singular_values;
    let (smax, smin) = (sv.max(), sv.min());
    if smax == 0.0 {
        0.0
    } else {
        smin / smax
    }
}

/// Build the degeneration report for a diverged path of `inst`.
pub fn inspect(inst: &Instance, path: &PathResult, opts: &InspectOptions) -> Result<DegenerationReport> {
    if path.status != PathStatus::Diverged {
        return Err(Error::Precondition(format!(
            "path {} is {:?}, not diverged",
            path.index, path.status
        )));
    }
    let g: &CombinatorialType = &inst.ty;
    let n = g.boundary_count();
    let nv = g.vertex_count();
    let interior = unknowns_to_points(&path.endpoint);
    if interior.len() != g.interior_count() {
        return Err(Error::DimensionMismatch { expected: 2 * g.interior_count(), got: path.endpoint.len() });
    }

    let mut limits = Vec::new();
    for (k, p) in interior.iter().enumerate() {
        let limit = ProjectivePoint::from_affine(p).canonicalize();
        limits.push(VertexLimit {
            vertex: n + k,
            at_infinity: limit.is_at_infinity(opts.infinity_tol),
            limit,
            magnitude: p.magnitude(),
        });
    }
    let points_at_infinity: Vec<usize> = limits.iter().filter(|l| l.at_infinity).map(|l| l.vertex).collect();
    let finite_points: Vec<usize> = limits.iter().filter(|l| !l.at_infinity).map(|l| l.vertex).collect();
    if points_at_infinity.is_empty() {
        return Err(Error::Inconsistent(format!(
            "path {} diverged but no interior point is at infinity",
            path.index
        )));
    }
    let mut notes = Vec::new();
    let ambiguous = limits
        .iter()
        .any(|l| !l.at_infinity && l.magnitude * 10.0 >= opts.divergence_threshold);
    if ambiguous {
        notes.push("a finite point is within a factor of 10 of the divergence threshold".into());
    }

    let finite: BTreeSet<usize> = (0..n).chain(finite_points.iter().copied()).collect();
    let h_prime_edges: Vec<(usize, usize)> =
        g.edges().into_iter().filter(|(a, b)| finite.contains(a) && finite.contains(b)).collect();

    // Component of H' through the boundary.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &h_prime_edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut in_h = vec![false; nv];
    let mut stack = vec![0usize];
    in_h[0] = true;
    while let Some(v) = stack.pop() {
        for &w in adj.get(&v).into_iter().flatten() {
            if !in_h[w] {
                in_h[w] = true;
                stack.push(w);
            }
        }
    }
    let h_vertices: Vec<usize> = (0..nv).filter(|&v| in_h[v]).collect();
    let h_edges: Vec<(usize, usize)> =
        h_prime_edges.iter().copied().filter(|(a, _)| in_h[*a]).collect();
    let h_edge_set: BTreeSet<(usize, usize)> = h_edges.iter().copied().collect();

    // Rotation system of G restricted to H, traced into faces.
    let rot: Vec<Vec<usize>> = g
        .rotation_system()
        .iter()
        .enumerate()
        .map(|(v, r)| r.iter().copied().filter(|&w| h_edge_set.contains(&edge(v, w))).collect())
        .collect();
    let mut face_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut walks: Vec<Vec<usize>> = Vec::new();
    for &(a, b) in &h_edges {
        for (u, v) in [(a, b), (b, a)] {
            if face_of.contains_key(&(u, v)) {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let (mut x, mut y) = (u, v);
            while !face_of.contains_key(&(x, y)) {
                face_of.insert((x, y), id);
                walk.push(x);
                let around = &rot[y];
                let pos = around.iter().position(|&w| w == x).expect("edge in rotation");
                let next = around[(pos + around.len() - 1) % around.len()];
                (x, y) = (y, next);
            }
            walks.push(walk);
        }
    }
    let outer = face_of[&(1 % n, 0)];

    // Group G faces across G edges that are not in H.
    let faces: &[Face] = g.faces();
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    let mut by_edge: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, f) in faces.iter().enumerate() {
        for j in 0..3 {
            let e = edge(f[j], f[(j + 1) % 3]);
            if h_edge_set.contains(&e) {
                continue;
            }
            if let Some(&other) = by_edge.get(&e) {
                let (ra, rb) = (union_find_root(&mut parent, k), union_find_root(&mut parent, other));
                parent[ra] = rb;
            } else {
                by_edge.insert(e, k);
            }
        }
    }
    let mut group_face: BTreeMap<usize, usize> = BTreeMap::new();
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, f) in faces.iter().enumerate() {
        let root = union_find_root(&mut parent, k);
        members.entry(root).or_default().push(k);
        for j in 0..3 {
            let (a, b) = (f[j], f[(j + 1) % 3]);
            if h_edge_set.contains(&edge(a, b)) {
                group_face.insert(root, face_of[&(a, b)]);
            }
        }
    }

    let areas = inst.areas.for_type(g)?;
    let finite_vertex = |v: usize| v < n || !limits[v - n].at_infinity;
    let imposed: BTreeSet<usize> = match &opts.imposed_faces {
        Some(list) => list
            .iter()
            .enumerate()
            .filter(|(j, _)| finite_vertex(n + j / 2))
            .map(|(_, &f)| f)
            .collect(),
        None => (0..faces.len()).collect(),
    };
    let position = |v: usize| -> AffinePoint {
        if v < n {
            inst.polygon.vertices()[v].to_affine()
        } else {
            interior[v - n]
        }
    };
    let origin = AffinePoint::real(0.0, 0.0);
    let mut h_faces = Vec::new();
    for (root, g_faces) in members {
        let Some(&walk_id) = group_face.get(&root) else {
            return Err(Error::Inconsistent("face group without a boundary in H".into()));
        };
        if walk_id == outer {
            return Err(Error::Inconsistent("G face mapped to the outer face of H".into()));
        }
        let walk = walks[walk_id].clone();
        let pts: Vec<AffinePoint> = walk.iter().map(|&v| position(v)).collect();
        let prescribed = g_faces.iter().fold(BigRational::zero(), |acc, &k| acc + &areas[k]);
        let is_g_face = g_faces.len() == 1;
        let collinearity = (!is_g_face).then(|| {
            let distinct: BTreeSet<usize> = walk.iter().copied().collect();
            collinearity_deviation(&distinct.iter().map(|&v| position(v)).collect::<Vec<_>>())
        });
        h_faces.push(HFace {
            imposed: is_g_face && imposed.contains(&g_faces[0]),
            limit_area: oriented_area_polygon(&pts, &origin),
            walk,
            g_faces,
            is_g_face,
            prescribed,
            collinearity,
        });
    }
    h_faces.sort_by(|a, b| a.g_faces.cmp(&b.g_faces));

    Ok(DegenerationReport {
        path_index: path.index,
        t_final: path.t_final,
        limits,
        points_at_infinity,
        finite_points,
        h_prime_vertices: finite.into_iter().collect(),
        h_prime_edges,
        h_vertices,
        h_edges,
        faces: h_faces,
        ambiguous,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreaSumAudit {
    /// `Σ S_f` over bounded faces of `H`.
    pub prescribed_sum: BigRational,
    /// `Σ S'_f` over bounded faces of `H`.
    pub limit_sum: C64,
    pub polygon_area: BigRational,
    /// `Σ (S_f - S'_f)` over all bounded faces.
    pub total_defect: C64,
    /// `Σ (S_f - Re S'_f)` over bounded faces of `H` that are not faces of `G`.
    pub non_g_defect: f64,
    /// Whether `Σ S_f` equals the polygon area exactly.
    pub prescribed_matches_polygon: bool,
    /// No visible defect: the limit looks like an ordinary solution.
    pub near_solution: bool,
}

/// Defect below which the audit flags a near-solution.
pub const DEFECT_TOL: f64 = 1e-6;

/// Compare prescribed and limit areas over the faces of `H`.
pub fn area_sum_audit(report: &DegenerationReport, inst: &Instance) -> AreaSumAudit {
    let prescribed_sum = report.faces.iter().fold(BigRational::zero(), |acc, f| acc + &f.prescribed);
    let limit_sum = report.faces.iter().map(|f| f.limit_area).sum::<C64>();
    let polygon_area = inst.polygon.area();
    let non_g_defect = report
        .faces
        .iter()
        .filter(|f| !f.is_g_face)
        .map(|f| rat_to_f64(&f.prescribed) - f.limit_area.re)
        .sum::<f64>();
    AreaSumAudit {
        total_defect: C64::new(rat_to_f64(&prescribed_sum), 0.0) - limit_sum,
        prescribed_matches_polygon: prescribed_sum == polygon_area,
        near_solution: non_g_defect.abs() < DEFECT_TOL,
        prescribed_sum,
        limit_sum,
        polygon_area,
        non_g_defect,
    }
}
