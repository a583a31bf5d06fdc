//! Area equations of a fixed combinatorial type in the affine chart `z = 1`,
//! plus sparse complex polynomial evaluation and Jacobians.
//!
//! For each face `(i, j, k)` the equation is
//! `det[[x_i, x_j, x_k], [y_i, y_j, y_k], [1, 1, 1]] - 2 S_ijk = 0`,
//! with boundary coordinates substituted as exact constants.

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::Zero;

use crate::combo::{normalize_face, CombinatorialType, Face};
use crate::error::{Error, Result};
use crate::exact::RationalPoly;
use crate::geom::{AffinePoint, Polygon, C64};

/// Sparse polynomial with complex double coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, C64)>,
}

impl MultiPoly {
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C64)>) -> Self {
        let mut merged: std::collections::BTreeMap<Vec<u32>, C64> = Default::default();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            *merged.entry(e).or_insert_with(C64::zero) += c;
        }
        MultiPoly { nvars, terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, C64)] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] > 0)
    }

    pub fn eval(&self, x: &[C64]) -> C64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = *c;
                for (xi, &k) in x.iter().zip(e) {
                    for _ in 0..k {
                        t *= xi;
                    }
                }
                t
            })
            .sum()
    }

    /// Partial derivative in variable `v`, evaluated at `x`.
    pub fn eval_partial(&self, v: usize, x: &[C64]) -> C64 {
        self.terms
            .iter()
            .filter(|(e, _)| e[v] > 0)
            .map(|(e, c)| {
                let mut t = *c * e[v] as f64;
                for (k, (xi, &p)) in x.iter().zip(e).enumerate() {
                    let p = if k == v { p - 1 } else { p };
                    for _ in 0..p {
                        t *= xi;
                    }
                }
                t
            })
            .sum()
    }
}

/// A list of complex polynomials in a common set of unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericSystem {
    nvars: usize,
    polys: Vec<MultiPoly>,
}

impl NumericSystem {
    pub fn new(nvars: usize, polys: Vec<MultiPoly>) -> Self {
        assert!(polys.iter().all(|p| p.nvars() == nvars));
        NumericSystem { nvars, polys }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    fn check_dim(&self, x: &[C64]) -> Result<()> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: x.len() });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[C64]) -> Result<Vec<C64>> {
        self.check_dim(x)?;
        Ok(self.polys.iter().map(|p| p.eval(x)).collect())
    }

    pub fn jacobian(&self, x: &[C64]) -> Result<DMatrix<C64>> {
        self.check_dim(x)?;
        Ok(DMatrix::from_fn(self.polys.len(), self.nvars, |r, c| self.polys[r].eval_partial(c, x)))
    }

    pub(crate) fn evaluate_vec(&self, x: &[C64]) -> DVector<C64> {
        DVector::from_iterator(self.polys.len(), self.polys.iter().map(|p| p.eval(x)))
    }

    pub fn residual_norm(&self, x: &[C64]) -> Result<f64> {
        Ok(self.evaluate(x)?.iter().map(|r| r.norm_sqr()).sum::<f64>().sqrt())
    }

    pub fn subsystem(&self, rows: &[usize]) -> NumericSystem {
        NumericSystem { nvars: self.nvars, polys: rows.iter().map(|&r| self.polys[r].clone()).collect() }
    }
}

/// One prescribed signed area per face, keyed by the face triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaAssignment {
    areas: Vec<(Face, BigRational)>,
}

impl AreaAssignment {
    pub fn new(entries: Vec<(Face, BigRational)>) -> Self {
        AreaAssignment {
            areas: entries.into_iter().map(|(f, a)| (normalize_face(f), a)).collect(),
        }
    }

    /// Areas listed in the type's face order.
    pub fn aligned(g: &CombinatorialType, areas: Vec<BigRational>) -> Result<Self> {
        if areas.len() != g.face_count() {
            return Err(Error::DimensionMismatch { expected: g.face_count(), got: areas.len() });
        }
        Ok(Self::new(g.faces().iter().copied().zip(areas).collect()))
    }

    /// Every face gets `area(P) / T`.
    pub fn equal(g: &CombinatorialType, p: &Polygon) -> Self {
        let share = p.area() / BigRational::from_integer(g.face_count().into());
        Self::new(g.faces().iter().map(|f| (*f, share.clone())).collect())
    }

    pub fn get(&self, face: &Face) -> Option<&BigRational> {
        let key = normalize_face(*face);
        self.areas.iter().find(|(f, _)| *f == key).map(|(_, a)| a)
    }

    /// Areas in the type's face order; error names the first missing face.
    pub fn for_type(&self, g: &CombinatorialType) -> Result<Vec<BigRational>> {
        g.faces()
            .iter()
            .map(|f| {
                self.get(f).cloned().ok_or_else(|| {
                    Error::MissingArea(format!("({}, {}, {})", f[0] + 1, f[1] + 1, f[2] + 1))
                })
            })
            .collect()
    }

    pub fn total(&self) -> BigRational {
        self.areas.iter().fold(BigRational::zero(), |acc, (_, a)| acc + a)
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        AreaAssignment { areas: self.areas.iter().map(|(f, a)| (*f, a * factor)).collect() }
    }
}

/// A polygon, a combinatorial type over it, and prescribed face areas.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub ty: CombinatorialType,
    pub polygon: Polygon,
    pub areas: AreaAssignment,
}

impl Instance {
    pub fn new(ty: CombinatorialType, polygon: Polygon, areas: AreaAssignment) -> Result<Self> {
        let ty = ty.validated()?;
        if polygon.len() != ty.boundary_count() {
            return Err(Error::DimensionMismatch { expected: ty.boundary_count(), got: polygon.len() });
        }
        areas.for_type(&ty)?;
        Ok(Instance { ty, polygon, areas })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub face_index: usize,
    pub face: Face,
    pub exact: RationalPoly,
    pub numeric: MultiPoly,
    /// Number of corners of the face that are unknown (interior) vertices.
    pub unknown_corners: usize,
}

impl Equation {
    pub fn degree(&self) -> u32 {
        self.numeric.total_degree()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantFace {
    pub face_index: usize,
    pub face: Face,
    /// `det - 2S`, exactly.
    pub residual: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSystem {
    variables: Vec<String>,
    equations: Vec<Equation>,
    constants_report: Vec<ConstantFace>,
    area_mismatch: Option<(BigRational, BigRational)>,
    boundary_count: usize,
}

impl PolynomialSystem {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn unknown_count(&self) -> usize {
        self.variables.len()
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn constants_report(&self) -> &[ConstantFace] {
        &self.constants_report
    }

    /// `(sum of prescribed areas, polygon area)` when they differ.
    pub fn area_mismatch(&self) -> Option<&(BigRational, BigRational)> {
        self.area_mismatch.as_ref()
    }

    pub fn exact_polys(&self) -> Vec<RationalPoly> {
        self.equations.iter().map(|e| e.exact.clone()).collect()
    }

    pub fn numeric(&self) -> NumericSystem {
        NumericSystem::new(
            self.unknown_count(),
            self.equations.iter().map(|e| e.numeric.clone()).collect(),
        )
    }

    pub fn evaluate(&self, x: &[C64]) -> Result<Vec<C64>> {
        self.numeric().evaluate(x)
    }

    pub fn jacobian(&self, x: &[C64]) -> Result<DMatrix<C64>> {
        self.numeric().jacobian(x)
    }

    /// Variable index of the x coordinate of vertex `v` (0-based), if interior.
    pub fn x_var(&self, v: usize) -> Option<usize> {
        v.checked_sub(self.boundary_count).map(|k| 2 * k)
    }
}

/// Interior points from a flat unknown vector `(x_{n+1}, y_{n+1}, ...)`.
pub fn unknowns_to_points(x: &[C64]) -> Vec<AffinePoint> {
    x.chunks(2).map(|c| AffinePoint::new(c[0], c[1])).collect()
}

pub fn points_to_unknowns(points: &[AffinePoint]) -> Vec<C64> {
    points.iter().flat_map(|p| [p.x, p.y]).collect()
}

pub fn variable_names(g: &CombinatorialType) -> Vec<String> {
    (g.boundary_count()..g.vertex_count())
        .flat_map(|v| [format!("x{}", v + 1), format!("y{}", v + 1)])
        .collect()
}

/// Build the area equations of `inst` in the affine chart.
pub fn build_system(inst: &Instance) -> Result<PolynomialSystem> {
    let g = &inst.ty;
    let n = g.boundary_count();
    let variables = variable_names(g);
    let areas = inst.areas.for_type(g)?;
    let verts = inst.polygon.vertices();
    let coord = |v: usize, axis: usize| -> RationalPoly {
        if v < n {
            let c = if axis == 0 { verts[v].x.clone() } else { verts[v].y.clone() };
            RationalPoly::constant(&variables, c)
        } else {
            RationalPoly::var(&variables, 2 * (v - n) + axis)
        }
    };
    let two = BigRational::from_integer(2.into());
    let mut equations = Vec::new();
    let mut constants_report = Vec::new();
    for (idx, (face, area)) in g.faces().iter().zip(&areas).enumerate() {
        let [i, j, k] = *face;
        let dxj = &coord(j, 0) - &coord(i, 0);
        let dyk = &coord(k, 1) - &coord(i, 1);
        let dxk = &coord(k, 0) - &coord(i, 0);
        let dyj = &coord(j, 1) - &coord(i, 1);
        let det = &(&dxj * &dyk) - &(&dxk * &dyj);
        let eq = &det - &RationalPoly::constant(&variables, &two * area);
        let unknown_corners = face.iter().filter(|&&v| v >= n).count();
        if unknown_corners == 0 {
            let residual = eq.eval(&vec![BigRational::zero(); variables.len()]);
            constants_report.push(ConstantFace { face_index: idx, face: *face, residual });
        } else {
            let numeric = eq.to_numeric();
            equations.push(Equation { face_index: idx, face: *face, exact: eq, numeric, unknown_corners });
        }
    }
    let total = inst.areas.total();
    let poly_area = inst.polygon.area();
    let area_mismatch = (total != poly_area).then_some((total, poly_area));
    Ok(PolynomialSystem { variables, equations, constants_report, area_mismatch, boundary_count: n })
}
