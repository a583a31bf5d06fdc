//! Planar and projective geometry over complex doubles and exact rationals.
//!
//! Oriented areas follow the half-determinant convention: positive for
//! counterclockwise triangles, extended verbatim to complex coordinates and
//! to closed point sequences through a reference point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// `|z|` below this after canonicalization marks a projective point at infinity.
pub const INFINITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinePoint {
    pub x: C64,
    pub y: C64,
}

impl AffinePoint {
    pub fn new(x: C64, y: C64) -> Self {
        AffinePoint { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        AffinePoint { x: C64::new(x, 0.0), y: C64::new(y, 0.0) }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn translate(&self, dx: C64, dy: C64) -> Self {
        AffinePoint { x: self.x + dx, y: self.y + dy }
    }

    /// Largest modulus of the two coordinates.
    pub fn magnitude(&self) -> f64 {
        self.x.norm().max(self.y.norm())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        // Ratio::new already reduces and keeps the denominator positive.
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint { x: BigRational::from_integer(x.into()), y: BigRational::from_integer(y.into()) }
    }

    pub fn to_affine(&self) -> AffinePoint {
        AffinePoint::real(rat_to_f64(&self.x), rat_to_f64(&self.y))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Half the determinant of `[[x1,x2,x3],[y1,y2,y3],[1,1,1]]`.
pub fn oriented_area_triangle(p1: &AffinePoint, p2: &AffinePoint, p3: &AffinePoint) -> C64 {
    ((p2.x - p1.x) * (p3.y - p1.y) - (p3.x - p1.x) * (p2.y - p1.y)) * 0.5
}

pub fn oriented_area_triangle_exact(
    p1: &RationalPoint,
    p2: &RationalPoint,
    p3: &RationalPoint,
) -> BigRational {
    (orient2d_exact(p1, p2, p3)) / BigRational::from_integer(2.into())
}

/// Twice the oriented area, exactly.
pub fn orient2d_exact(p1: &RationalPoint, p2: &RationalPoint, p3: &RationalPoint) -> BigRational {
    (&p2.x - &p1.x) * (&p3.y - &p1.y) - (&p3.x - &p1.x) * (&p2.y - &p1.y)
}

/// Sum of triangle areas `S(v_i, v_{i+1}, ref)` around the closed sequence.
pub fn oriented_area_polygon(points: &[AffinePoint], ref_point: &AffinePoint) -> C64 {
    let n = points.len();
    (0..n)
        .map(|i| oriented_area_triangle(&points[i], &points[(i + 1) % n], ref_point))
        .sum()
}

/// Exact shoelace area with the reference point at the origin.
pub fn oriented_area_polygon_exact(points: &[RationalPoint]) -> BigRational {
    let n = points.len();
    let mut twice = BigRational::zero();
    for i in 0..n {
        let a = &points[i];
        let b = &points[(i + 1) % n];
        twice += &a.x * &b.y - &b.x * &a.y;
    }
    twice / BigRational::from_integer(2.into())
}

fn sign(r: &BigRational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn on_segment_collinear(p: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> bool {
    let (xmin, xmax) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ymin, ymax) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    &p.x >= xmin && &p.x <= xmax && &p.y >= ymin && &p.y <= ymax
}

/// True when the closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(
    a: &RationalPoint,
    b: &RationalPoint,
    c: &RationalPoint,
    d: &RationalPoint,
) -> bool {
    let o1 = sign(&orient2d_exact(a, b, c));
    let o2 = sign(&orient2d_exact(a, b, d));
    let o3 = sign(&orient2d_exact(c, d, a));
    let o4 = sign(&orient2d_exact(c, d, b));
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal
        && o3 != Ordering::Equal && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && on_segment_collinear(c, a, b))
        || (o2 == Ordering::Equal && on_segment_collinear(d, a, b))
        || (o3 == Ordering::Equal && on_segment_collinear(a, c, d))
        || (o4 == Ordering::Equal && on_segment_collinear(b, c, d))
}

/// Segments `ab` and `ac` share the endpoint `a`; true when they overlap
/// along a positive-length piece.
pub fn segments_overlap_at_shared_endpoint(
    a: &RationalPoint,
    b: &RationalPoint,
    c: &RationalPoint,
) -> bool {
    if !orient2d_exact(a, b, c).is_zero() {
        return false;
    }
    // Collinear: overlapping iff b and c lie on the same side of a.
    let dot = (&b.x - &a.x) * (&c.x - &a.x) + (&b.y - &a.y) * (&c.y - &a.y);
    dot.is_positive()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// Exact point location against a simple polygon (crossing-number rule).
pub fn locate_point(p: &RationalPoint, polygon: &[RationalPoint]) -> Containment {
    let n = polygon.len();
    let mut inside = false;
    for i in 0..n {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % n];
        if orient2d_exact(a, b, p).is_zero() && on_segment_collinear(p, a, b) {
            return Containment::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // x-coordinate of the edge at height p.y compared to p.x
            let t = (&p.y - &a.y) / (&b.y - &a.y);
            let x_cross = &a.x + t * (&b.x - &a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    if inside {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

/// Homogeneous triple `[x:y:z]`, never all zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    x: C64,
    y: C64,
    z: C64,
}

impl ProjectivePoint {
    pub fn new(x: C64, y: C64, z: C64) -> Result<Self> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::ZeroProjectivePoint);
        }
        Ok(ProjectivePoint { x, y, z })
    }

    pub fn from_affine(p: &AffinePoint) -> Self {
        ProjectivePoint { x: p.x, y: p.y, z: C64::new(1.0, 0.0) }
    }

    pub fn coords(&self) -> [C64; 3] {
        [self.x, self.y, self.z]
    }

    /// Scale so the largest-magnitude coordinate is exactly 1.
    pub fn canonicalize(&self) -> ProjectivePoint {
        let coords = self.coords();
        // First index wins ties so repeated canonicalization is stable.
        let mut best = 0;
        for k in 1..3 {
            if coords[k].norm() > coords[best].norm() {
                best = k;
            }
        }
        let s = coords[best];
        let mut out = coords.map(|c| c / s);
        out[best] = C64::new(1.0, 0.0);
        ProjectivePoint { x: out[0], y: out[1], z: out[2] }
    }

    pub fn is_at_infinity(&self, tol: f64) -> bool {
        self.canonicalize().z.norm() < tol
    }

    /// Affine representative, if not at infinity.
    pub fn to_affine(&self) -> Option<AffinePoint> {
        if self.z.is_zero() {
            None
        } else {
            Some(AffinePoint { x: self.x / self.z, y: self.y / self.z })
        }
    }
}

/// Boundary polygon `v_1 .. v_n`: simple and counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<RationalPoint>,
}

impl Polygon {
    pub fn new(vertices: Vec<RationalPoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("need at least 3 vertices, got {n}")));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(Error::InvalidPolygon(format!(
                        "vertices {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            for j in i + 1..n {
                let c = &vertices[j];
                let d = &vertices[(j + 1) % n];
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let bad = if !adjacent {
                    segments_intersect(a, b, c, d)
                } else if j == i + 1 {
                    segments_overlap_at_shared_endpoint(b, a, d)
                } else {
                    segments_overlap_at_shared_endpoint(a, b, c)
                };
                if bad {
                    return Err(Error::InvalidPolygon(format!(
                        "edges {} and {} intersect",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let area = oriented_area_polygon_exact(&vertices);
        if !area.is_positive() {
            return Err(Error::InvalidPolygon("boundary is not counterclockwise".into()));
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> BigRational {
        oriented_area_polygon_exact(&self.vertices)
    }

    /// Every vertex turns left.
    pub fn is_strictly_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orient2d_exact(&self.vertices[i], &self.vertices[(i + 1) % n], &self.vertices[(i + 2) % n])
                .is_positive()
        })
    }

    pub fn scaled(&self, factor: &BigRational) -> Result<Polygon> {
        Polygon::new(
            self.vertices
                .iter()
                .map(|p| RationalPoint::new(&p.x * factor, &p.y * factor))
                .collect(),
        )
    }
}
