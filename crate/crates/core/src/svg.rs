//! SVG drawings of triangulations.
//!
//! One `<circle>` per vertex, one `<line>` per edge and one `<text>` per face,
//! plus the polygon outline. The y axis points up in the drawing.

use std::fmt::Write;

use nalgebra::{DMatrix, DVector};

use crate::combo::CombinatorialType;
use crate::error::{Error, Result};
use crate::geom::rat_to_f64;
use crate::poly::Instance;
use crate::problem::format_rational;
use crate::solve::Solution;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Draw `g` with every vertex at `positions[v]` and face `k` labeled `labels[k]`.
pub fn render(g: &CombinatorialType, positions: &[(f64, f64)], labels: &[String]) -> String {
    let n = g.boundary_count();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &positions[..n] {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let size = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let (mx, my) = (0.05 * (x1 - x0).max(size * 1e-3), 0.05 * (y1 - y0).max(size * 1e-3));
    let radius = 0.012 * size;
    let font = 0.035 * size;
    let stroke = 0.004 * size;
    let px = |v: usize| num(positions[v].0);
    let py = |v: usize| num(-positions[v].1);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(x0 - mx),
        num(-y1 - my),
        num(x1 - x0 + 2.0 * mx),
        num(y1 - y0 + 2.0 * my)
    );
    let outline: Vec<String> = (0..n).map(|v| format!("{},{}", px(v), py(v))).collect();
    let _ = writeln!(
        s,
        r##"<polygon class="outline" points="{}" fill="#f4f1e8" stroke="#222" stroke-width="{}"/>"##,
        outline.join(" "),
        num(2.0 * stroke)
    );
    for (a, b) in g.edges() {
        let _ = writeln!(
            s,
            r##"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-width="{}"/>"##,
            px(a),
            py(a),
            px(b),
            py(b),
            num(stroke)
        );
    }
    for (f, label) in g.faces().iter().zip(labels) {
        let cx = f.iter().map(|&v| positions[v].0).sum::<f64>() / 3.0;
        let cy = f.iter().map(|&v| positions[v].1).sum::<f64>() / 3.0;
        let _ = writeln!(
            s,
            r##"<text class="face-label" x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="middle" fill="#333">{}</text>"##,
            num(cx),
            num(-cy),
            num(font),
            label
        );
    }
    for v in 0..g.vertex_count() {
        let fill = if v < n { "#222" } else { "#c0392b" };
        let _ = writeln!(
            s,
            r#"<circle class="vertex" cx="{}" cy="{}" r="{}" fill="{fill}"><title>{}</title></circle>"#,
            px(v),
            py(v),
            num(radius),
            v + 1
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Draw a real, geometric solution with faces labeled by their areas.
pub fn render_solution(inst: &Instance, sol: &Solution) -> Result<String> {
    if !sol.is_real {
        return Err(Error::Precondition("the solution is not real".into()));
    }
    if !sol.is_geometric() {
        return Err(Error::Precondition(format!(
            "the solution is not geometric: {}",
            sol.geometric.diagnostics.join("; ")
        )));
    }
    let mut positions: Vec<(f64, f64)> =
        inst.polygon.vertices().iter().map(|p| (rat_to_f64(&p.x), rat_to_f64(&p.y))).collect();
    positions.extend(sol.coordinates.iter().map(|p| (p.x.re, p.y.re)));
    let labels: Vec<String> =
        inst.areas.for_type(&inst.ty)?.iter().map(format_rational).collect();
    Ok(render(&inst.ty, &positions, &labels))
}

/// Vertices of a regular `n`-gon on the unit circle, counterclockwise.
pub fn regular_polygon(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|k| {
            let a = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (a.cos(), a.sin())
        })
        .collect()
}

/// Barycentric (Tutte) embedding with unit weights: each interior vertex at
/// the average of its neighbors, boundary fixed at `boundary`.
pub fn tutte_positions(g: &CombinatorialType, boundary: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let n = g.boundary_count();
    let m = g.interior_count();
    let rot = g.rotation_system();
    let mut a = DMatrix::<f64>::zeros(m, m);
    let mut bx = DVector::<f64>::zeros(m);
    let mut by = DVector::<f64>::zeros(m);
    for k in 0..m {
        let deg = rot[n + k].len() as f64;
        a[(k, k)] = deg;
        for &w in &rot[n + k] {
            if w < n {
                bx[k] += boundary[w].0;
                by[k] += boundary[w].1;
            } else {
                a[(k, w - n)] -= 1.0;
            }
        }
    }
    let lu = a.lu();
    let xs = lu.solve(&bx).unwrap_or_else(|| DVector::zeros(m));
    let ys = lu.solve(&by).unwrap_or_else(|| DVector::zeros(m));
    boundary.iter().copied().chain((0..m).map(|k| (xs[k], ys[k]))).collect()
}

/// Draw a type in a regular polygon, faces labeled by their 1-based number.
pub fn render_type(g: &CombinatorialType) -> String {
    let pos = tutte_positions(g, &regular_polygon(g.boundary_count()));
    let labels: Vec<String> = (1..=g.face_count()).map(|k| k.to_string()).collect();
    render(g, &pos, &labels)
}
