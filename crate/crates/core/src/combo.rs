//! Combinatorial types of polygon triangulations.
//!
//! Vertices are 0-based: `0..n` is the boundary cycle in counterclockwise
//! order, `n..N` are interior vertices. Faces are counterclockwise triples.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Face = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorialType {
    n: usize,
    vertex_count: usize,
    faces: Vec<Face>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewBoundaryVertices(usize),
    VertexCountBelowBoundary { n: usize, vertex_count: usize },
    FaceIndexOutOfRange { face: usize },
    DegenerateFace { face: usize },
    DuplicateDirectedEdge { from: usize, to: usize },
    BoundaryEdgeNotCovered { from: usize, to: usize },
    BoundaryEdgeReversed { from: usize, to: usize },
    BoundaryEdgeOvercovered { from: usize, to: usize, faces: usize },
    DanglingEdge { a: usize, b: usize, faces: usize },
    InconsistentOrientation { a: usize, b: usize },
    UnusedVertex(usize),
    BadVertexLink(usize),
    EulerViolation { characteristic: i64 },
    FaceCountMismatch { expected: usize, got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            TooFewBoundaryVertices(n) => write!(f, "boundary has {n} < 3 vertices"),
            VertexCountBelowBoundary { n, vertex_count } => {
                write!(f, "vertex count {vertex_count} below boundary size {n}")
            }
            FaceIndexOutOfRange { face } => write!(f, "face {} has an out-of-range vertex", face + 1),
            DegenerateFace { face } => write!(f, "face {} repeats a vertex", face + 1),
            DuplicateDirectedEdge { from, to } => {
                write!(f, "directed edge {}->{} used by two faces", from + 1, to + 1)
            }
            BoundaryEdgeNotCovered { from, to } => {
                write!(f, "boundary edge {}-{} borders no face (uncovered region)", from + 1, to + 1)
            }
            BoundaryEdgeReversed { from, to } => {
                write!(f, "boundary edge {}-{} is traversed clockwise", from + 1, to + 1)
            }
            BoundaryEdgeOvercovered { from, to, faces } => {
                write!(f, "boundary edge {}-{} borders {faces} faces", from + 1, to + 1)
            }
            DanglingEdge { a, b, faces } => {
                write!(f, "interior edge {}-{} borders {faces} face(s), expected 2", a + 1, b + 1)
            }
            InconsistentOrientation { a, b } => {
                write!(f, "faces on edge {}-{} have inconsistent orientation", a + 1, b + 1)
            }
            UnusedVertex(v) => write!(f, "vertex {} lies in no face", v + 1),
            BadVertexLink(v) => write!(f, "link of vertex {} is not a single cycle/path", v + 1),
            EulerViolation { characteristic } => {
                write!(f, "V - E + F = {characteristic}, expected 2")
            }
            FaceCountMismatch { expected, got } => {
                write!(f, "face count {got}, expected n - 2 + 2i = {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

fn undirected(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl CombinatorialType {
    /// Unchecked constructor; call [`CombinatorialType::validate`] or
    /// [`CombinatorialType::validated`] before use.
    pub fn new(n: usize, vertex_count: usize, faces: Vec<Face>) -> Self {
        CombinatorialType { n, vertex_count, faces }
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidType(report.to_string()))
        }
    }

    /// Cone over the boundary: one interior vertex joined to every corner.
    pub fn cone(n: usize) -> Self {
        let faces = (0..n).map(|k| [k, (k + 1) % n, n]).collect();
        CombinatorialType { n, vertex_count: n + 1, faces }
    }

    /// Fan triangulation from boundary vertex `apex`.
    pub fn fan(n: usize, apex: usize) -> Self {
        let faces = (1..n - 1).map(|k| [apex, (apex + k) % n, (apex + k + 1) % n]).collect();
        CombinatorialType { n, vertex_count: n, faces }
    }

    pub fn boundary_count(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn interior_count(&self) -> usize {
        self.vertex_count.saturating_sub(self.n)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn is_boundary_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && ((a + 1) % self.n == b || (b + 1) % self.n == a)
    }

    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for f in &self.faces {
            for k in 0..3 {
                out.insert(undirected(f[k], f[(k + 1) % 3]));
            }
        }
        out
    }

    pub fn interior_edges(&self) -> Vec<(usize, usize)> {
        self.edges().into_iter().filter(|&(a, b)| !self.is_boundary_edge(a, b)).collect()
    }

    /// Index of the face containing the triple in any cyclic rotation.
    pub fn face_index(&self, face: &Face) -> Option<usize> {
        let key = normalize_face(*face);
        self.faces.iter().position(|f| normalize_face(*f) == key)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let n = self.n;
        let nv = self.vertex_count;
        if n < 3 {
            v.push(Violation::TooFewBoundaryVertices(n));
        }
        if nv < n {
            v.push(Violation::VertexCountBelowBoundary { n, vertex_count: nv });
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }
        let mut structural = false;
        for (k, f) in self.faces.iter().enumerate() {
            if f.iter().any(|&x| x >= nv) {
                v.push(Violation::FaceIndexOutOfRange { face: k });
                structural = true;
            } else if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                v.push(Violation::DegenerateFace { face: k });
                structural = true;
            }
        }
        if structural {
            return ValidationReport { violations: v };
        }

        let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for f in &self.faces {
            for k in 0..3 {
                *directed.entry((f[k], f[(k + 1) % 3])).or_default() += 1;
            }
        }
        for (&(a, b), &c) in &directed {
            if c > 1 {
                v.push(Violation::DuplicateDirectedEdge { from: a, to: b });
            }
        }
        let edges = self.edges();
        for k in 0..n {
            let (a, b) = (k, (k + 1) % n);
            let fwd = directed.get(&(a, b)).copied().unwrap_or(0);
            let bwd = directed.get(&(b, a)).copied().unwrap_or(0);
            match (fwd, bwd) {
                (0, 0) => v.push(Violation::BoundaryEdgeNotCovered { from: a, to: b }),
                (0, _) => v.push(Violation::BoundaryEdgeReversed { from: a, to: b }),
                (1, 0) => {}
                _ => v.push(Violation::BoundaryEdgeOvercovered { from: a, to: b, faces: fwd + bwd }),
            }
        }
        for &(a, b) in &edges {
            if self.is_boundary_edge(a, b) {
                continue;
            }
            let fwd = directed.get(&(a, b)).copied().unwrap_or(0);
            let bwd = directed.get(&(b, a)).copied().unwrap_or(0);
            if fwd + bwd != 2 {
                v.push(Violation::DanglingEdge { a, b, faces: fwd + bwd });
            } else if fwd != 1 {
                v.push(Violation::InconsistentOrientation { a, b });
            }
        }
        let mut used = vec![false; nv];
        for f in &self.faces {
            for &x in f {
                used[x] = true;
            }
        }
        for (x, &u) in used.iter().enumerate() {
            if !u {
                v.push(Violation::UnusedVertex(x));
            }
        }
        if v.is_empty() {
            for x in 0..nv {
                if self.link_order(x).is_none() {
                    v.push(Violation::BadVertexLink(x));
                }
            }
        }
        let chi = nv as i64 - edges.len() as i64 + self.faces.len() as i64 + 1;
        if chi != 2 {
            v.push(Violation::EulerViolation { characteristic: chi });
        }
        let expected = n - 2 + 2 * (nv - n);
        if self.faces.len() != expected {
            v.push(Violation::FaceCountMismatch { expected, got: self.faces.len() });
        }
        ValidationReport { violations: v }
    }

    /// Neighbors of `v` in counterclockwise order. Boundary vertices start at
    /// the next boundary vertex and end at the previous one; interior vertices
    /// start at their smallest neighbor. `None` if the link is not a single
    /// cycle (interior) or path (boundary).
    fn link_order(&self, v: usize) -> Option<Vec<usize>> {
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for f in &self.faces {
            for k in 0..3 {
                if f[k] == v {
                    if next.insert(f[(k + 1) % 3], f[(k + 2) % 3]).is_some() {
                        return None;
                    }
                }
            }
        }
        let neighbors: BTreeSet<usize> =
            next.keys().copied().chain(next.values().copied()).collect();
        let start = if v < self.n { (v + 1) % self.n } else { *neighbors.iter().next()? };
        let mut order = vec![start];
        let mut cur = start;
        while let Some(&nx) = next.get(&cur) {
            if nx == start {
                break;
            }
            if order.len() > neighbors.len() {
                return None;
            }
            order.push(nx);
            cur = nx;
        }
        if order.len() != neighbors.len() {
            return None;
        }
        if v < self.n {
            let prev = (v + self.n - 1) % self.n;
            if *order.last()? != prev || next.contains_key(&prev) {
                return None;
            }
        } else if next.get(order.last()?) != Some(&start) {
            return None;
        }
        Some(order)
    }

    /// Counterclockwise rotation system of a valid type.
    pub fn rotation_system(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count).map(|v| self.link_order(v).unwrap_or_default()).collect()
    }

    /// Rename interior vertices: `n + k` becomes `n + perm[k]`.
    pub fn relabel_interior(&self, perm: &[usize]) -> CombinatorialType {
        let n = self.n;
        let map = |x: usize| if x < n { x } else { n + perm[x - n] };
        CombinatorialType {
            n,
            vertex_count: self.vertex_count,
            faces: self.faces.iter().map(|f| f.map(map)).collect(),
        }
    }

    /// Insert a new interior vertex into face `face`, splitting it in three.
    pub fn split(&self, face: usize) -> CombinatorialType {
        let [a, b, c] = self.faces[face];
        let w = self.vertex_count;
        let mut faces: Vec<Face> = self.faces.clone();
        faces[face] = [a, b, w];
        faces.push([b, c, w]);
        faces.push([c, a, w]);
        CombinatorialType { n: self.n, vertex_count: w + 1, faces }
    }

    /// Flip interior edge `{a, b}`. `None` if the edge is on the boundary,
    /// absent, or the flipped edge already exists.
    pub fn flip(&self, a: usize, b: usize) -> Option<CombinatorialType> {
        if self.is_boundary_edge(a, b) {
            return None;
        }
        let mut left = None;
        let mut right = None;
        for (k, f) in self.faces.iter().enumerate() {
            for r in 0..3 {
                if f[r] == a && f[(r + 1) % 3] == b {
                    left = Some((k, f[(r + 2) % 3]));
                }
                if f[r] == b && f[(r + 1) % 3] == a {
                    right = Some((k, f[(r + 2) % 3]));
                }
            }
        }
        let ((fl, c), (fr, d)) = (left?, right?);
        if c == d || self.edges().contains(&undirected(c, d)) {
            return None;
        }
        // Quadrilateral a, d, b, c counterclockwise; new diagonal c-d.
        let mut faces = self.faces.clone();
        faces[fl] = [a, d, c];
        faces[fr] = [d, b, c];
        Some(CombinatorialType { n: self.n, vertex_count: self.vertex_count, faces })
    }

    /// Same type with interior vertices renumbered canonically and faces sorted.
    pub fn canonical_representative(&self) -> CombinatorialType {
        let labels = bfs_labels(self);
        let mut faces: Vec<Face> =
            self.faces.iter().map(|f| normalize_face(f.map(|x| labels[x]))).collect();
        faces.sort();
        CombinatorialType { n: self.n, vertex_count: self.vertex_count, faces }
    }
}

/// Rotate a face so its smallest vertex comes first, keeping cyclic order.
pub fn normalize_face(f: Face) -> Face {
    let k = (0..3).min_by_key(|&k| f[k]).unwrap_or(0);
    [f[k], f[(k + 1) % 3], f[(k + 2) % 3]]
}

/// Symmetries of the boundary that the caller declares admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundarySymmetry {
    /// Boundary labels fully fixed.
    #[default]
    None,
    Rotations,
    Dihedral,
}

fn boundary_maps(n: usize, sym: BoundarySymmetry) -> Vec<(Vec<usize>, bool)> {
    let mut maps = vec![((0..n).collect::<Vec<_>>(), false)];
    if matches!(sym, BoundarySymmetry::Rotations | BoundarySymmetry::Dihedral) {
        for r in 1..n {
            maps.push(((0..n).map(|k| (k + r) % n).collect(), false));
        }
    }
    if sym == BoundarySymmetry::Dihedral {
        for r in 0..n {
            maps.push(((0..n).map(|k| (r + n - k) % n).collect(), true));
        }
    }
    maps
}

fn apply_boundary_map(t: &CombinatorialType, map: &[usize], reflect: bool) -> CombinatorialType {
    let n = t.n;
    let faces = t
        .faces
        .iter()
        .map(|f| {
            let g = f.map(|x| if x < n { map[x] } else { x });
            if reflect {
                [g[0], g[2], g[1]]
            } else {
                g
            }
        })
        .collect();
    CombinatorialType { n, vertex_count: t.vertex_count, faces }
}

/// Breadth-first labeling seeded by the (fixed) boundary: interior vertices
/// get labels in discovery order, scanning each vertex's rotation from a
/// reference neighbor determined by the traversal itself.
fn bfs_labels(t: &CombinatorialType) -> Vec<usize> {
    let rot = t.rotation_system();
    let n = t.n;
    let mut label = vec![usize::MAX; t.vertex_count];
    let mut parent = vec![usize::MAX; t.vertex_count];
    let mut queue = VecDeque::new();
    for (v, slot) in label.iter_mut().enumerate().take(n) {
        *slot = v;
        queue.push_back(v);
    }
    let mut next = n;
    while let Some(v) = queue.pop_front() {
        let order = &rot[v];
        let start = if v < n { 0 } else { order.iter().position(|&w| w == parent[v]).unwrap_or(0) };
        for k in 0..order.len() {
            let w = order[(start + k) % order.len()];
            if label[w] == usize::MAX {
                label[w] = next;
                next += 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    label
}

fn serialize_type(t: &CombinatorialType) -> Vec<u8> {
    let mut s = format!("{},{}", t.n, t.vertex_count);
    for f in &t.faces {
        s.push_str(&format!(";{} {} {}", f[0], f[1], f[2]));
    }
    s.into_bytes()
}

/// Canonical byte string, equal for types related by a plane isomorphism that
/// maps the boundary cycle by one of the admissible symmetries.
pub fn canonical_form(t: &CombinatorialType, sym: BoundarySymmetry) -> Result<Vec<u8>> {
    let report = t.validate();
    if !report.is_valid() {
        return Err(Error::InvalidType(report.to_string()));
    }
    Ok(canonical_form_unchecked(t, sym))
}

fn canonical_form_unchecked(t: &CombinatorialType, sym: BoundarySymmetry) -> Vec<u8> {
    boundary_maps(t.n, sym)
        .into_iter()
        .map(|(map, reflect)| {
            serialize_type(&apply_boundary_map(t, &map, reflect).canonical_representative())
        })
        .min()
        .unwrap_or_default()
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    pub max_interior: usize,
    /// Maximum number of distinct classes held at any level.
    pub max_types: usize,
    pub symmetry: BoundarySymmetry,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_interior: 3, max_types: 200_000, symmetry: BoundarySymmetry::None }
    }
}

/// All combinatorial types with `n` boundary and `interior` interior vertices,
/// one representative per class, sorted by canonical form.
pub fn enumerate_types(
    n: usize,
    interior: usize,
    opts: &EnumerateOptions,
) -> Result<Vec<CombinatorialType>> {
    if n < 3 {
        return Err(Error::InvalidType(format!("boundary needs at least 3 vertices, got {n}")));
    }
    if interior > opts.max_interior {
        return Err(Error::CapExceeded { cap: "max_interior", limit: opts.max_interior });
    }
    let mut level: BTreeMap<Vec<u8>, CombinatorialType> = BTreeMap::new();
    let seeds: Vec<CombinatorialType> = (0..n).map(|apex| CombinatorialType::fan(n, apex)).collect();
    flip_closure(seeds, &mut level, opts)?;
    for _ in 0..interior {
        let splits: Vec<CombinatorialType> = level
            .values()
            .flat_map(|t| (0..t.face_count()).map(move |f| t.split(f)))
            .collect();
        level.clear();
        flip_closure(splits, &mut level, opts)?;
    }
    Ok(level.into_values().collect())
}

fn flip_closure(
    seeds: Vec<CombinatorialType>,
    classes: &mut BTreeMap<Vec<u8>, CombinatorialType>,
    opts: &EnumerateOptions,
) -> Result<()> {
    let mut stack = Vec::new();
    let insert = |t: CombinatorialType,
                      classes: &mut BTreeMap<Vec<u8>, CombinatorialType>,
                      stack: &mut Vec<CombinatorialType>|
     -> Result<()> {
        let key = canonical_form_unchecked(&t, opts.symmetry);
        if !classes.contains_key(&key) {
            if classes.len() >= opts.max_types {
                return Err(Error::CapExceeded { cap: "max_types", limit: opts.max_types });
            }
            let rep = t.canonical_representative();
            classes.insert(key, rep.clone());
            stack.push(rep);
        }
        Ok(())
    };
    for t in seeds {
        insert(t, classes, &mut stack)?;
    }
    let mut seen_edges: HashSet<Vec<u8>> = HashSet::new();
    while let Some(t) = stack.pop() {
        if !seen_edges.insert(serialize_type(&t)) {
            continue;
        }
        for (a, b) in t.interior_edges() {
            if let Some(f) = t.flip(a, b) {
                insert(f, classes, &mut stack)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_cone() -> CombinatorialType {
        CombinatorialType::cone(4)
    }

    #[test]
    fn validate_examples() {
        let diag = CombinatorialType::new(4, 4, vec![[0, 1, 2], [0, 2, 3]]);
        assert!(diag.validate().is_valid());
        assert_eq!(diag.face_count(), 2);
        assert_eq!(diag.interior_count(), 0);

        let cone = square_cone();
        assert!(cone.validate().is_valid());
        assert_eq!(cone.face_count(), 4);
        assert_eq!(cone.interior_count(), 1);

        let partial = CombinatorialType::new(4, 4, vec![[0, 1, 2]]);
        let report = partial.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::BoundaryEdgeNotCovered { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::UnusedVertex(3))));
    }

    #[test]
    fn validate_rejects_misuse() {
        // clockwise faces
        let cw = CombinatorialType::new(4, 4, vec![[0, 2, 1], [0, 3, 2]]);
        assert!(!cw.validate().is_valid());
        // interior vertex used on the boundary-like dangling edge
        let dangling = CombinatorialType::new(3, 4, vec![[0, 1, 3], [1, 2, 3]]);
        let r = dangling.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::DanglingEdge { .. })));
        // out of range
        let oob = CombinatorialType::new(3, 3, vec![[0, 1, 7]]);
        assert!(matches!(oob.validate().violations[0], Violation::FaceIndexOutOfRange { .. }));
        // pinched vertex: two cones glued through a single interior vertex
        let pinch = CombinatorialType::new(
            3,
            4,
            vec![[0, 1, 3], [1, 2, 3], [2, 0, 3], [0, 1, 3]],
        );
        assert!(!pinch.validate().is_valid());
    }

    #[test]
    fn rotation_system_of_cone() {
        let rot = square_cone().rotation_system();
        assert_eq!(rot[0], vec![1, 4, 3]);
        assert_eq!(rot[4], vec![0, 1, 2, 3]);
    }

    #[test]
    fn flip_and_split() {
        let diag = CombinatorialType::fan(4, 0);
        let flipped = diag.flip(0, 2).unwrap();
        assert!(flipped.validate().is_valid());
        assert!(flipped.edges().contains(&(1, 3)));
        assert!(diag.flip(0, 1).is_none());
        let s = diag.split(0);
        assert!(s.validate().is_valid());
        assert_eq!(s.interior_count(), 1);
        // degree-3 vertex: its edges cannot be flipped
        assert!(s.flip(0, 4).is_none());
    }

    #[test]
    fn canonical_form_examples() {
        let d13 = CombinatorialType::fan(4, 0);
        let d24 = CombinatorialType::fan(4, 1);
        let f1 = canonical_form(&d13, BoundarySymmetry::None).unwrap();
        let f2 = canonical_form(&d24, BoundarySymmetry::None).unwrap();
        assert_ne!(f1, f2);
        // under rotations they coincide
        assert_eq!(
            canonical_form(&d13, BoundarySymmetry::Rotations).unwrap(),
            canonical_form(&d24, BoundarySymmetry::Rotations).unwrap()
        );

        let mut shuffled = square_cone();
        shuffled.faces.reverse();
        assert_eq!(
            canonical_form(&shuffled, BoundarySymmetry::None).unwrap(),
            canonical_form(&square_cone(), BoundarySymmetry::None).unwrap()
        );
        let bad = CombinatorialType::new(4, 4, vec![[0, 1, 2]]);
        assert!(canonical_form(&bad, BoundarySymmetry::None).is_err());
    }

    #[test]
    fn relabeled_interior_is_isomorphic() {
        let t = square_cone().split(0);
        let perm = vec![1, 0];
        let r = t.relabel_interior(&perm);
        assert_ne!(t.faces, r.faces);
        assert_eq!(
            canonical_form(&t, BoundarySymmetry::None).unwrap(),
            canonical_form(&r, BoundarySymmetry::None).unwrap()
        );
    }

    #[test]
    fn enumerate_small_counts() {
        let opts = EnumerateOptions::default();
        assert_eq!(enumerate_types(3, 0, &opts).unwrap().len(), 1);
        assert_eq!(enumerate_types(4, 0, &opts).unwrap().len(), 2);
        assert_eq!(enumerate_types(5, 0, &opts).unwrap().len(), 5);
        let cone = canonical_form(&square_cone(), BoundarySymmetry::None).unwrap();
        let types = enumerate_types(4, 1, &opts).unwrap();
        assert!(types
            .iter()
            .any(|t| canonical_form(t, BoundarySymmetry::None).unwrap() == cone));
        for t in &types {
            assert!(t.validate().is_valid());
            assert_eq!(t.face_count(), 4 - 2 + 2);
        }
    }

    #[test]
    fn enumerate_caps() {
        let opts = EnumerateOptions { max_interior: 1, ..Default::default() };
        assert!(matches!(
            enumerate_types(4, 2, &opts),
            Err(Error::CapExceeded { cap: "max_interior", .. })
        ));
        let tiny = EnumerateOptions { max_types: 3, ..Default::default() };
        assert!(matches!(
            enumerate_types(6, 0, &tiny),
            Err(Error::CapExceeded { cap: "max_types", .. })
        ));
    }
}
