//! Browser bindings: solve a problem file, draw a solution, and browse the
//! combinatorial types of a polygon.
//!
//! Each export has a plain Rust counterpart returning `Result<String, String>`
//! so the logic can be tested natively.

use equidissect::combo::{enumerate_types, EnumerateOptions};
use equidissect::report::{run_types, solve_report, to_text, type_json, TypeRun};
use equidissect::svg::{render_solution, render_type};
use equidissect::{ProblemFile, SolveConfig, SquareStrategy};
use wasm_bindgen::prelude::*;

/// Interior vertex cap for the browser: keeps every request interactive.
pub const MAX_INTERIOR: usize = 2;

fn runs(toml: &str, seed: u32, certify: bool) -> Result<Vec<TypeRun>, String> {
    let problem = ProblemFile::parse(toml).map_err(|e| e.to_string())?;
    let opts = EnumerateOptions { max_interior: MAX_INTERIOR, ..Default::default() };
    let instances = problem.instances(&opts).map_err(|e| e.to_string())?;
    if let Some(inst) = instances.iter().find(|i| i.ty.interior_count() > MAX_INTERIOR) {
        return Err(format!(
            "the demo handles at most {MAX_INTERIOR} interior vertices (got {})",
            inst.ty.interior_count()
        ));
    }
    let mut config = SolveConfig { seed: u64::from(seed), ..SolveConfig::default() };
    if let Some(faces) = &problem.square_faces {
        config.square = SquareStrategy::Faces(faces.clone());
    }
    run_types(instances, &config, certify).map_err(|e| e.to_string())
}

/// JSON solve report for a TOML problem file.
pub fn solve_json(toml: &str, seed: u32) -> Result<String, String> {
    let runs = runs(toml, seed, true)?;
    let report = solve_report(&runs, u64::from(seed), 1e-6).map_err(|e| e.to_string())?;
    Ok(to_text(&report))
}

/// SVG drawing of one solution.
pub fn solution_svg(toml: &str, seed: u32, type_index: usize, index: usize) -> Result<String, String> {
    let runs = runs(toml, seed, false)?;
    let run = runs.get(type_index).ok_or_else(|| format!("no type {type_index}"))?;
    let sol = run.set.solutions.get(index).ok_or_else(|| format!("no solution {index}"))?;
    render_solution(&run.instance, sol).map_err(|e| e.to_string())
}

/// JSON list of types, each with a drawing in a regular polygon.
pub fn types_json(n: usize, interior: usize) -> Result<String, String> {
    let opts = EnumerateOptions { max_interior: MAX_INTERIOR, ..Default::default() };
    let types = enumerate_types(n, interior, &opts).map_err(|e| e.to_string())?;
    let list: Vec<_> = types
        .iter()
        .map(|g| {
            let mut v = type_json(g);
            v.as_object_mut().expect("object").insert("svg".into(), render_type(g).into());
            v
        })
        .collect();
    Ok(to_text(&serde_json::json!({ "count": types.len(), "types": list })))
}

#[wasm_bindgen]
pub fn solve(toml: &str, seed: u32) -> Result<String, JsValue> {
    solve_json(toml, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn render(toml: &str, seed: u32, type_index: usize, index: usize) -> Result<String, JsValue> {
    solution_svg(toml, seed, type_index, index).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn enumerate(n: usize, interior: usize) -> Result<String, JsValue> {
    types_json(n, interior).map_err(|e| JsValue::from_str(&e))
}
