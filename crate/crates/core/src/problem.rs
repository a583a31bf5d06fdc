//! TOML problem files.
//!
//! ```toml
//! polygon = [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]
//! areas = ["1/8", "1/4", "3/8", "1/4"]   # or: areas = { equal = true }
//! square_faces = [1, 2]                  # optional, 1-based face numbers
//!
//! [type]                                 # or: [type.enumerate] n = 4, i = 1
//! n = 4
//! N = 5
//! faces = [[1, 2, 5], [2, 3, 5], [3, 4, 5], [4, 1, 5]]
//! ```
//!
//! Vertices and faces are numbered from 1 in files; boundary vertices come
//! first, counterclockwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::combo::{enumerate_types, CombinatorialType, EnumerateOptions};
use crate::error::{Error, Result};
use crate::geom::{Polygon, RationalPoint};
use crate::poly::{AreaAssignment, Instance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeSpec {
    Inline(CombinatorialType),
    Enumerate { n: usize, interior: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AreaSpec {
    /// One area per face, in face order.
    List(Vec<BigRational>),
    /// Every face gets the polygon area divided by the face count.
    Equal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub polygon: Vec<RationalPoint>,
    pub ty: TypeSpec,
    pub areas: AreaSpec,
    /// Explicit square subsystem, as 0-based face indices.
    pub square_faces: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    polygon: Vec<Vec<String>>,
    #[serde(rename = "type")]
    ty: RawType,
    areas: RawAreas,
    square_faces: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawType {
    Enumerate { enumerate: RawEnumerate },
    Inline {
        n: usize,
        #[serde(rename = "N")]
        vertex_count: usize,
        faces: Vec<[usize; 3]>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnumerate {
    n: usize,
    i: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAreas {
    List(Vec<String>),
    Directive { equal: bool },
}

fn parse_error(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { field: field.into(), message: message.into() }
}

/// Parse `"p/q"` or `"p"` into a rational.
pub fn parse_rational(field: &str, s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt =
        num.parse().map_err(|_| parse_error(field, format!("'{s}' is not a rational number")))?;
    let den: BigInt =
        den.parse().map_err(|_| parse_error(field, format!("'{s}' is not a rational number")))?;
    if den.is_zero() {
        return Err(parse_error(field, format!("'{s}' has a zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

/// Lowest-terms `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        let raw: RawProblem = toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            let field = e
                .span()
                .map(|s| {
                    let line = text[..s.start.min(text.len())].matches('\n').count() + 1;
                    format!("line {line}")
                })
                .unwrap_or_else(|| "file".into());
            parse_error(field, msg)
        })?;

        let mut polygon = Vec::new();
        for (k, pair) in raw.polygon.iter().enumerate() {
            let field = format!("polygon[{}]", k + 1);
            let [x, y] = pair.as_slice() else {
                return Err(parse_error(field, "expected a pair of coordinates"));
            };
            polygon.push(RationalPoint::new(
                parse_rational(&format!("{field}.x"), x)?,
                parse_rational(&format!("{field}.y"), y)?,
            ));
        }

        let ty = match raw.ty {
            RawType::Enumerate { enumerate } => {
                TypeSpec::Enumerate { n: enumerate.n, interior: enumerate.i }
            }
            RawType::Inline { n, vertex_count, faces } => {
                let mut zero_based = Vec::with_capacity(faces.len());
                for (k, f) in faces.iter().enumerate() {
                    if f.iter().any(|&v| v == 0 || v > vertex_count) {
                        return Err(parse_error(
                            format!("type.faces[{}]", k + 1),
                            format!("vertex numbers must lie in 1..={vertex_count}"),
                        ));
                    }
                    zero_based.push(f.map(|v| v - 1));
                }
                TypeSpec::Inline(CombinatorialType::new(n, vertex_count, zero_based))
            }
        };

        let areas = match raw.areas {
            RawAreas::List(list) => AreaSpec::List(
                list.iter()
                    .enumerate()
                    .map(|(k, s)| parse_rational(&format!("areas[{}]", k + 1), s))
                    .collect::<Result<_>>()?,
            ),
            RawAreas::Directive { equal: true } => AreaSpec::Equal,
            RawAreas::Directive { equal: false } => {
                return Err(parse_error("areas.equal", "only `equal = true` is meaningful"))
            }
        };
        if let (TypeSpec::Enumerate { .. }, AreaSpec::List(_)) = (&ty, &areas) {
            return Err(parse_error("areas", "an enumerate directive needs `areas = { equal = true }`"));
        }
        if let (TypeSpec::Inline(g), AreaSpec::List(list)) = (&ty, &areas) {
            if list.len() != g.face_count() {
                return Err(parse_error(
                    "areas",
                    format!("{} areas given for {} faces", list.len(), g.face_count()),
                ));
            }
        }

        let square_faces = match raw.square_faces {
            None => None,
            Some(list) => {
                let TypeSpec::Inline(g) = &ty else {
                    return Err(parse_error("square_faces", "needs an inline type"));
                };
                let mut out = Vec::new();
                for (k, &f) in list.iter().enumerate() {
                    if f == 0 || f > g.face_count() {
                        return Err(parse_error(
                            format!("square_faces[{}]", k + 1),
                            format!("face numbers must lie in 1..={}", g.face_count()),
                        ));
                    }
                    out.push(f - 1);
                }
                Some(out)
            }
        };

        Ok(ProblemFile { polygon, ty, areas, square_faces })
    }

    /// Canonical TOML text; `parse(to_toml(p)) == p`.
    pub fn to_toml(&self) -> String {
        let mut s = String::new();
        let pts: Vec<String> = self
            .polygon
            .iter()
            .map(|p| format!("[\"{}\", \"{}\"]", format_rational(&p.x), format_rational(&p.y)))
            .collect();
        s.push_str(&format!("polygon = [{}]\n", pts.join(", ")));
        match &self.areas {
            AreaSpec::List(list) => {
                let items: Vec<String> =
                    list.iter().map(|a| format!("\"{}\"", format_rational(a))).collect();
                s.push_str(&format!("areas = [{}]\n", items.join(", ")));
            }
            AreaSpec::Equal => s.push_str("areas = { equal = true }\n"),
        }
        if let Some(faces) = &self.square_faces {
            let items: Vec<String> = faces.iter().map(|f| (f + 1).to_string()).collect();
            s.push_str(&format!("square_faces = [{}]\n", items.join(", ")));
        }
        match &self.ty {
            TypeSpec::Inline(g) => {
                let faces: Vec<String> = g
                    .faces()
                    .iter()
                    .map(|f| format!("[{}, {}, {}]", f[0] + 1, f[1] + 1, f[2] + 1))
                    .collect();
                s.push_str(&format!(
                    "\n[type]\nn = {}\nN = {}\nfaces = [{}]\n",
                    g.boundary_count(),
                    g.vertex_count(),
                    faces.join(", ")
                ));
            }
            TypeSpec::Enumerate { n, interior } => {
                s.push_str(&format!("\n[type.enumerate]\nn = {n}\ni = {interior}\n"));
            }
        }
        s
    }

    pub fn polygon(&self) -> Result<Polygon> {
        Polygon::new(self.polygon.clone())
    }

    /// One instance per combinatorial type the file describes.
    pub fn instances(&self, opts: &EnumerateOptions) -> Result<Vec<Instance>> {
        let polygon = self.polygon()?;
        let types = match &self.ty {
            TypeSpec::Inline(g) => vec![g.clone().validated()?],
            TypeSpec::Enumerate { n, interior } => {
                if *n != polygon.len() {
                    return Err(parse_error(
                        "type.enumerate.n",
                        format!("n = {n} but the polygon has {} vertices", polygon.len()),
                    ));
                }
                enumerate_types(*n, *interior, opts)?
            }
        };
        types
            .into_iter()
            .map(|g| {
                if g.boundary_count() != polygon.len() {
                    return Err(parse_error(
                        "type.n",
                        format!("n = {} but the polygon has {} vertices", g.boundary_count(), polygon.len()),
                    ));
                }
                let areas = match &self.areas {
                    AreaSpec::List(list) => AreaAssignment::aligned(&g, list.clone())?,
                    AreaSpec::Equal => AreaAssignment::equal(&g, &polygon),
                };
                Instance::new(g, polygon.clone(), areas)
            })
            .collect()
    }
}
