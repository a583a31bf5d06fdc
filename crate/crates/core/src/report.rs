//! JSON reports for solve and inspect runs.
//!
//! Floats are written as 17-significant-digit strings and rationals as
//! `"p/q"`, so reports are byte-stable for a fixed seed. Vertex and face
//! numbers are 1-based.

use serde_json::{json, Value};

use crate::combo::{CombinatorialType, Face};
use crate::degen::{area_sum_audit, inspect, DegenerationReport, InspectOptions};
use crate::error::Result;
use crate::exact::{certify, AlgebraicityCertificate, MAX_CERTIFY_INTERIOR};
use crate::geom::{ProjectivePoint, C64};
use crate::homotopy::PathResult;
use crate::poly::{build_system, Instance};
use crate::problem::format_rational;
use crate::solve::{solve, Solution, SolutionSet, SolveConfig};

/// Everything computed for one combinatorial type.
#[derive(Debug, Clone)]
pub struct TypeRun {
    pub instance: Instance,
    pub set: SolutionSet,
    /// `None` when certification was not requested.
    pub certificates: Option<std::result::Result<Vec<AlgebraicityCertificate>, String>>,
}

/// Solve every instance, certifying when asked and the cap allows.
pub fn run_types(instances: Vec<Instance>, config: &SolveConfig, certify_solutions: bool) -> Result<Vec<TypeRun>> {
    instances
        .into_iter()
        .map(|instance| {
            let set = solve(&instance, config)?;
            let certificates = certify_solutions.then(|| {
                if instance.ty.interior_count() > MAX_CERTIFY_INTERIOR {
                    Err(format!(
                        "skipped: certification is capped at {MAX_CERTIFY_INTERIOR} interior vertices"
                    ))
                } else {
                    certify(&instance, &set.solutions).map_err(|e| e.to_string())
                }
            });
            Ok(TypeRun { instance, set, certificates })
        })
        .collect()
}

pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn complex(c: C64) -> Value {
    json!({ "re": fmt_f64(c.re), "im": fmt_f64(c.im) })
}

fn face_json(f: &Face) -> Value {
    json!([f[0] + 1, f[1] + 1, f[2] + 1])
}

pub fn type_json(g: &CombinatorialType) -> Value {
    json!({
        "n": g.boundary_count(),
        "N": g.vertex_count(),
        "faces": g.faces().iter().map(face_json).collect::<Vec<_>>(),
    })
}

fn projective(p: &ProjectivePoint) -> Value {
    Value::Array(p.coords().iter().map(|&c| complex(c)).collect())
}

fn solution_json(index: usize, n: usize, s: &Solution) -> Value {
    let coords: Vec<Value> = s
        .coordinates
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let exact = s.exact.as_ref().map(|q| {
                json!({ "x": format_rational(&q[k].x), "y": format_rational(&q[k].y) })
            });
            json!({ "vertex": n + k + 1, "x": complex(p.x), "y": complex(p.y), "exact": exact })
        })
        .collect();
    json!({
        "index": index,
        "coordinates": coords,
        "residual": fmt_f64(s.residual),
        "real": s.is_real,
        "geometric": s.is_geometric(),
        "diagnostics": s.geometric.diagnostics,
        "isolation": {
            "rank": s.isolation.rank,
            "unknowns": s.isolation.unknowns,
            "isolated": s.isolation.isolated,
        },
        "paths": s.paths,
    })
}

fn path_json(n: usize, p: &PathResult, infinity_tol: f64) -> Value {
    let limits: Vec<Value> = p
        .projective_limits
        .iter()
        .enumerate()
        .map(|(k, l)| {
            json!({
                "vertex": n + k + 1,
                "projective": projective(l),
                "at_infinity": l.is_at_infinity(infinity_tol),
            })
        })
        .collect();
    json!({
        "path": p.index,
        "t_final": fmt_f64(p.t_final),
        "steps": p.steps,
        "max_magnitude": fmt_f64(p.max_magnitude()),
        "limits": limits,
        "failure": p.failure,
    })
}

fn certificate_json(c: &AlgebraicityCertificate) -> Value {
    Value::Array(
        c.coordinates
            .iter()
            .map(|k| {
                json!({
                    "variable": k.variable,
                    "polynomial": k.polynomial,
                    "text": k.text,
                    "value": complex(C64::new(k.value[0], k.value[1])),
                    "matched_root": complex(C64::new(k.matched_root[0], k.matched_root[1])),
                    "root_distance": fmt_f64(k.root_distance),
                    "residual": fmt_f64(k.residual),
                    "residual_bound": fmt_f64(k.residual_bound),
                    "exact_root": k.exact_rational_root,
                })
            })
            .collect(),
    )
}

fn run_header(run: &TypeRun) -> Result<Value> {
    let inst = &run.instance;
    let system = build_system(inst)?;
    let areas = inst.areas.for_type(&inst.ty)?;
    let constants: Vec<Value> = system
        .constants_report()
        .iter()
        .map(|c| json!({ "face": face_json(&c.face), "residual": format_rational(&c.residual) }))
        .collect();
    Ok(json!({
        "type": type_json(&inst.ty),
        "areas": areas.iter().map(format_rational).collect::<Vec<_>>(),
        "equations": system.equations().iter().map(|e| json!({
            "face": face_json(&e.face),
            "polynomial": e.exact.to_string(),
        })).collect::<Vec<_>>(),
        "constants": constants,
        "square_faces": run.set.square_faces.iter().map(|f| f + 1).collect::<Vec<_>>(),
        "leftover_faces": run.set.leftover_faces.iter().map(|f| f + 1).collect::<Vec<_>>(),
        "degrees": run.set.degrees,
        "infeasible": run.set.infeasible,
        "warnings": run.set.warnings,
        "paths": {
            "total": run.set.counts.total,
            "converged": run.set.counts.converged,
            "diverged": run.set.counts.diverged,
            "failed": run.set.counts.failed,
        },
    }))
}

fn summary(runs: &[TypeRun]) -> Value {
    json!({
        "types": runs.len(),
        "solutions": runs.iter().map(|r| r.set.solutions.len()).sum::<usize>(),
        "real": runs.iter().map(|r| r.set.solutions.iter().filter(|s| s.is_real).count()).sum::<usize>(),
        "geometric": runs.iter().map(|r| r.set.geometric().count()).sum::<usize>(),
        "failed_paths": runs.iter().map(|r| r.set.counts.failed).sum::<usize>(),
        "infeasible_types": runs.iter().filter(|r| r.set.infeasible.is_some()).count(),
    })
}

/// Report of a solve run.
pub fn solve_report(runs: &[TypeRun], seed: u64, infinity_tol: f64) -> Result<Value> {
    let mut types = Vec::new();
    for run in runs {
        let n = run.instance.ty.boundary_count();
        let mut v = run_header(run)?;
        let obj = v.as_object_mut().expect("object");
        obj.insert(
            "solutions".into(),
            run.set.solutions.iter().enumerate().map(|(k, s)| solution_json(k, n, s)).collect(),
        );
        obj.insert(
            "divergences".into(),
            run.set.divergences.iter().map(|p| path_json(n, p, infinity_tol)).collect(),
        );
        obj.insert(
            "failures".into(),
            run.set.failures.iter().map(|p| path_json(n, p, infinity_tol)).collect(),
        );
        if let Some(c) = &run.certificates {
            obj.insert(
                "certificates".into(),
                match c {
                    Ok(list) => json!({ "ok": list.iter().map(certificate_json).collect::<Vec<_>>() }),
                    Err(e) => json!({ "error": e }),
                },
            );
        }
        types.push(v);
    }
    Ok(json!({ "seed": seed, "types": types, "summary": summary(runs) }))
}

fn degeneration_json(r: &DegenerationReport, inst: &Instance) -> Value {
    let one = |v: &usize| v + 1;
    let pair = |e: &(usize, usize)| json!([e.0 + 1, e.1 + 1]);
    let audit = area_sum_audit(r, inst);
    json!({
        "path": r.path_index,
        "t_final": fmt_f64(r.t_final),
        "points_at_infinity": r.points_at_infinity.iter().map(one).collect::<Vec<_>>(),
        "finite_points": r.finite_points.iter().map(one).collect::<Vec<_>>(),
        "limits": r.limits.iter().map(|l| json!({
            "vertex": l.vertex + 1,
            "projective": projective(&l.limit),
            "at_infinity": l.at_infinity,
            "magnitude": fmt_f64(l.magnitude),
        })).collect::<Vec<_>>(),
        "h_prime": {
            "vertices": r.h_prime_vertices.iter().map(one).collect::<Vec<_>>(),
            "edges": r.h_prime_edges.iter().map(pair).collect::<Vec<_>>(),
        },
        "h": {
            "vertices": r.h_vertices.iter().map(one).collect::<Vec<_>>(),
            "edges": r.h_edges.iter().map(pair).collect::<Vec<_>>(),
        },
        "faces": r.faces.iter().map(|f| json!({
            "walk": f.walk.iter().map(one).collect::<Vec<_>>(),
            "g_faces": f.g_faces.iter().map(one).collect::<Vec<_>>(),
            "is_g_face": f.is_g_face,
            "imposed": f.imposed,
            "prescribed": format_rational(&f.prescribed),
            "limit_area": complex(f.limit_area),
            "collinearity": f.collinearity.map(fmt_f64),
        })).collect::<Vec<_>>(),
        "ambiguous": r.ambiguous,
        "notes": r.notes,
        "audit": {
            "prescribed_sum": format_rational(&audit.prescribed_sum),
            "limit_sum": complex(audit.limit_sum),
            "polygon_area": format_rational(&audit.polygon_area),
            "total_defect": complex(audit.total_defect),
            "non_g_defect": fmt_f64(audit.non_g_defect),
            "prescribed_matches_polygon": audit.prescribed_matches_polygon,
            "near_solution": audit.near_solution,
        },
    })
}

/// Degeneration reports for every diverged path of every run.
pub fn inspect_all(runs: &[TypeRun], opts: &InspectOptions) -> Result<Vec<Vec<DegenerationReport>>> {
    runs.iter()
        .map(|run| {
            let o = InspectOptions { imposed_faces: Some(run.set.square_faces.clone()), ..opts.clone() };
            run.set.divergences.iter().map(|p| inspect(&run.instance, p, &o)).collect()
        })
        .collect()
}

/// Report of an inspect run.
pub fn inspect_report(runs: &[TypeRun], seed: u64, opts: &InspectOptions) -> Result<Value> {
    let reports = inspect_all(runs, opts)?;
    let mut types = Vec::new();
    for (run, reps) in runs.iter().zip(&reports) {
        let mut v = run_header(run)?;
        v.as_object_mut().expect("object").insert(
            "degenerations".into(),
            reps.iter().map(|r| degeneration_json(r, &run.instance)).collect(),
        );
        types.push(v);
    }
    Ok(json!({ "seed": seed, "types": types, "summary": summary(runs) }))
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
