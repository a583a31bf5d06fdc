//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use equidissect::combo::{CombinatorialType, Face};
use equidissect::geom::{rat, RationalPoint};
use equidissect::Polygon;

pub fn square() -> Polygon {
    Polygon::new(vec![
        RationalPoint::from_ints(0, 0),
        RationalPoint::from_ints(1, 0),
        RationalPoint::from_ints(1, 1),
        RationalPoint::from_ints(0, 1),
    ])
    .unwrap()
}

pub fn triangle() -> Polygon {
    Polygon::new(vec![
        RationalPoint::from_ints(0, 0),
        RationalPoint::from_ints(1, 0),
        RationalPoint::from_ints(0, 1),
    ])
    .unwrap()
}

pub fn pentagon() -> Polygon {
    Polygon::new(vec![
        RationalPoint::from_ints(0, 0),
        RationalPoint::from_ints(2, 0),
        RationalPoint::from_ints(3, 2),
        RationalPoint::from_ints(1, 3),
        RationalPoint::from_ints(-1, 2),
    ])
    .unwrap()
}

/// Square with two interior vertices: 5 on the left, 6 on the right.
pub fn square_two_interior() -> CombinatorialType {
    CombinatorialType::new(4, 6, vec![[0, 1, 4], [1, 5, 4], [1, 2, 5], [2, 3, 5], [3, 4, 5], [3, 0, 4]])
        .validated()
        .unwrap()
}

/// Triangle with vertex 4 adjacent to everything and vertex 5 inside 1-2-4.
pub fn degenerating_family() -> CombinatorialType {
    CombinatorialType::new(3, 5, vec![[0, 1, 4], [1, 3, 4], [3, 0, 4], [1, 2, 3], [2, 0, 3]])
        .validated()
        .unwrap()
}

pub fn q(p: i64, d: i64) -> num_rational::BigRational {
    rat(p, d)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn combinations(items: &[(usize, usize)], k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for mut c in combinations(&items[1..], k - 1) {
        c.insert(0, items[0]);
        out.push(c);
    }
    out.extend(combinations(&items[1..], k));
    out
}

fn normalize(f: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&k| f[k]).unwrap();
    [f[k], f[(k + 1) % 3], f[(k + 2) % 3]]
}

/// Label-independent key: minimum over interior relabelings of the sorted faces.
pub fn oracle_key(n: usize, vertex_count: usize, faces: &[Face]) -> Vec<[usize; 3]> {
    let interior: Vec<usize> = (n..vertex_count).collect();
    let mut best: Option<Vec<[usize; 3]>> = None;
    for perm in permutations(&interior) {
        let map = |v: usize| if v < n { v } else { perm[v - n] };
        let mut fs: Vec<[usize; 3]> = faces.iter().map(|f| normalize(f.map(map))).collect();
        fs.sort();
        if best.as_ref().is_none_or(|b| fs < *b) {
            best = Some(fs);
        }
    }
    best.unwrap()
}

/// All triangulation types of an `n`-gon with `interior` interior vertices,
/// found by enumerating edge sets and rotation systems and tracing faces.
pub fn brute_force_types(n: usize, interior: usize) -> BTreeSet<Vec<[usize; 3]>> {
    let nv = n + interior;
    let t = n - 2 + 2 * interior;
    let e = (3 * t + n) / 2;
    let boundary: Vec<(usize, usize)> = (0..n).map(|k| (k.min((k + 1) % n), k.max((k + 1) % n))).collect();
    let others: Vec<(usize, usize)> = (0..nv)
        .flat_map(|a| (a + 1..nv).map(move |b| (a, b)))
        .filter(|p| !boundary.contains(p))
        .collect();
    let mut found = BTreeSet::new();
    for extra in combinations(&others, e - n) {
        let edges: Vec<(usize, usize)> = boundary.iter().chain(extra.iter()).copied().collect();
        let mut nbrs = vec![Vec::new(); nv];
        for &(a, b) in &edges {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        if nbrs.iter().enumerate().any(|(v, l)| l.len() < if v < n { 2 } else { 3 }) {
            continue;
        }
        // Candidate counterclockwise orders per vertex.
        let mut choices: Vec<Vec<Vec<usize>>> = Vec::new();
        for v in 0..nv {
            let next = (v + 1) % n;
            let prev = (v + n - 1) % n;
            let opts = if v < n {
                let middle: Vec<usize> = nbrs[v].iter().copied().filter(|&w| w != next && w != prev).collect();
                permutations(&middle)
                    .into_iter()
                    .map(|m| std::iter::once(next).chain(m).chain(std::iter::once(prev)).collect())
                    .collect()
            } else {
                let mut l = nbrs[v].clone();
                l.sort();
                let first = l.remove(0);
                permutations(&l).into_iter().map(|m| std::iter::once(first).chain(m).collect()).collect()
            };
            choices.push(opts);
        }
        let mut idx = vec![0usize; nv];
        loop {
            let rot: Vec<&Vec<usize>> = (0..nv).map(|v| &choices[v][idx[v]]).collect();
            if let Some(faces) = trace(n, nv, &rot) {
                if faces.len() == t {
                    found.insert(oracle_key(n, nv, &faces));
                }
            }
            let mut k = 0;
            while k < nv {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == nv {
                break;
            }
        }
    }
    found
}

/// Faces of the rotation system if it is a planar triangulation of the
/// boundary cycle: outer face is the boundary traversed clockwise, all
/// others are triangles.
fn trace(n: usize, nv: usize, rot: &[&Vec<usize>]) -> Option<Vec<Face>> {
    let mut seen = BTreeSet::new();
    let mut faces = Vec::new();
    let mut outer_found = false;
    let mut dart_count = 0;
    for u in 0..nv {
        for &v in rot[u] {
            dart_count += 1;
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                walk.push(a);
                let around = rot[b];
                let pos = around.iter().position(|&w| w == a)?;
                let c = around[(pos + around.len() - 1) % around.len()];
                (a, b) = (b, c);
            }
            if (a, b) != (u, v) {
                return None;
            }
            let is_outer = walk.len() == n
                && walk.iter().all(|&x| x < n)
                && (0..n).all(|k| walk[(k + 1) % n] == (walk[k] + n - 1) % n);
            if is_outer {
                if outer_found {
                    return None;
                }
                outer_found = true;
            } else if walk.len() == 3 && walk[0] != walk[1] && walk[1] != walk[2] && walk[0] != walk[2] {
                faces.push([walk[0], walk[1], walk[2]]);
            } else {
                return None;
            }
        }
    }
    // Euler's formula for the sphere.
    let edges = dart_count / 2;
    if !outer_found || nv + faces.len() + 1 != edges + 2 {
        return None;
    }
    Some(faces)
}

/// Central finite-difference Jacobian of `f` at `x`.
pub fn fd_jacobian(
    f: impl Fn(&[equidissect::C64]) -> Vec<equidissect::C64>,
    x: &[equidissect::C64],
    h: f64,
) -> Vec<Vec<equidissect::C64>> {
    let m = f(x).len();
    let mut jac = vec![vec![equidissect::C64::new(0.0, 0.0); x.len()]; m];
    for j in 0..x.len() {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[j] += h;
        xm[j] -= h;
        let (fp, fm) = (f(&xp), f(&xm));
        for i in 0..m {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}
