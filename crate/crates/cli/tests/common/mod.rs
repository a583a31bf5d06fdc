//! Helpers shared by the CLI tests and the acceptance harness.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use equidissect::ProblemFile;

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> PathBuf {
    manifest_dir().join("tests/fixtures").join(name)
}

/// Runs the binary and returns (exit code, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_equidissect"))
        .args(args)
        .current_dir(manifest_dir().join("tests/fixtures"))
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

/// Golden reports: file name and CLI arguments (run from the fixtures directory).
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("solve_square_cone.json", &["solve", "square_cone.toml", "--certify", "--seed", "0"]),
    ("solve_square_cone_equal.json", &["solve", "square_cone_equal.toml", "--certify", "--seed", "3"]),
    ("solve_triangle_centroid.json", &["solve", "triangle_centroid.toml", "--certify", "--seed", "1"]),
    ("solve_square_enumerate.json", &["solve", "square_enumerate.toml", "--seed", "0"]),
    ("inspect_inconsistent_cone.json", &["inspect", "inconsistent_cone.toml", "--seed", "0"]),
    ("enumerate_4_1.json", &["enumerate-types", "--n", "4", "--i", "1"]),
];

/// Compares one golden report byte for byte. With `UPDATE_GOLDEN=1` the
/// file is rewritten instead.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let (_, stdout, stderr) = run(args);
    if stdout.is_empty() {
        return Err(format!("{name}: no output ({stderr})"));
    }
    let path = manifest_dir().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == stdout {
        Ok(())
    } else {
        Err(format!("{name}: output differs from golden file"))
    }
}

/// Counts of (vertex circles, edge lines, face labels) in an SVG document.
pub fn svg_counts(svg: &str) -> (usize, usize, usize) {
    (
        svg.matches("<circle").count(),
        svg.matches("<line").count(),
        svg.matches("class=\"face-label\"").count(),
    )
}

/// Parse, serialize and reparse a problem file; both parses must agree and
/// serialization must be idempotent.
pub fn roundtrip(path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let first = ProblemFile::parse(&text).map_err(|e| e.to_string())?;
    let written = first.to_toml();
    let second = ProblemFile::parse(&written).map_err(|e| e.to_string())?;
    if first != second {
        return Err(format!("{}: reparsed problem differs", path.display()));
    }
    if second.to_toml() != written {
        return Err(format!("{}: serialization is not stable", path.display()));
    }
    Ok(())
}

/// All fixtures that are meant to parse.
pub fn valid_fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(manifest_dir().join("tests/fixtures"))
        .expect("fixtures directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml") && !p.ends_with("bad_rational.toml"))
        .collect();
    v.sort();
    v
}
