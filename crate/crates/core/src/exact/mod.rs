//! Exact elimination over the rationals and algebraicity certificates.
//!
//! Each coordinate of a solution gets a nonzero integer polynomial that
//! vanishes on it, obtained by iterated Sylvester resultants of the exact
//! area equations. The numeric value is then matched to a root.

mod ratpoly;
pub mod univariate;

pub use ratpoly::{Exponents, RationalPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::C64;
use crate::poly::{build_system, Instance};
use crate::solve::{rationalize, Solution};
use univariate::UPoly;

/// Largest interior-vertex count for which certification runs.
pub const MAX_CERTIFY_INTERIOR: usize = 2;

/// Largest variable count accepted by [`eliminate`].
pub const MAX_ELIMINATION_VARS: usize = 4;

/// Resultant of `f` and `g` with respect to variable `v`, via a fraction-free
/// (Bareiss) determinant of the Sylvester matrix.
pub fn resultant(f: &RationalPoly, g: &RationalPoly, v: usize) -> RationalPoly {
    let vars = f.variables().to_vec();
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let m = fc.len() - 1;
    let k = gc.len() - 1;
    if f.is_zero() || g.is_zero() {
        return RationalPoly::zero(&vars);
    }
    if m == 0 && k == 0 {
        return RationalPoly::constant(&vars, BigRational::from_integer(1.into()));
    }
    if m == 0 {
        return pow(&fc[0], k);
    }
    if k == 0 {
        return pow(&gc[0], m);
    }
    let size = m + k;
    let zero = RationalPoly::zero(&vars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    // Rows hold descending-degree coefficient shifts.
    for r in 0..k {
        for (d, c) in fc.iter().rev().enumerate() {
            mat[r][r + d] = c.clone();
        }
    }
    for r in 0..m {
        for (d, c) in gc.iter().rev().enumerate() {
            mat[k + r][r + d] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn pow(p: &RationalPoly, e: usize) -> RationalPoly {
    let mut acc = RationalPoly::constant(p.variables(), BigRational::from_integer(1.into()));
    for _ in 0..e {
        acc = &acc * p;
    }
    acc
}

fn bareiss_det(mut m: Vec<Vec<RationalPoly>>) -> RationalPoly {
    let n = m.len();
    let vars = m[0][0].variables().to_vec();
    let mut sign_negative = false;
    let mut prev = RationalPoly::constant(&vars, BigRational::from_integer(1.into()));
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return RationalPoly::zero(&vars);
            };
            m.swap(k, swap);
            sign_negative = !sign_negative;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        -&det
    } else {
        det
    }
}

fn normalize(p: &RationalPoly) -> RationalPoly {
    p.strip_monomial_factor().primitive()
}

/// Choose the next variable: prefer one with a polynomial of degree 1 in it
/// whose leading coefficient is constant (pure substitution).
fn next_variable(set: &[RationalPoly], remaining: &[usize]) -> usize {
    let score = |v: usize| -> (u32, u32, usize) {
        let substitution = set.iter().any(|p| {
            p.degree_in(v) == 1 && p.coefficients_in(v)[1].is_constant()
        });
        let min_deg = set.iter().filter(|p| p.involves(v)).map(|p| p.degree_in(v)).min().unwrap_or(0);
        (u32::from(!substitution), min_deg, v)
    };
    *remaining.iter().min_by_key(|&&v| score(v)).unwrap_or(&remaining[0])
}

fn eliminate_variable(set: Vec<RationalPoly>, v: usize) -> Vec<RationalPoly> {
    let (with_v, mut without): (Vec<_>, Vec<_>) = set.into_iter().partition(|p| p.involves(v));
    if with_v.len() < 2 {
        return without;
    }
    let pivot_idx = (0..with_v.len())
        .min_by_key(|&i| {
            let p = &with_v[i];
            let lead_const = p.coefficients_in(v).last().map(|c| c.is_constant()).unwrap_or(false);
            (p.degree_in(v), u32::from(!lead_const), p.term_count(), i)
        })
        .unwrap_or(0);
    let pivot = &with_v[pivot_idx];
    for (i, q) in with_v.iter().enumerate() {
        if i == pivot_idx {
            continue;
        }
        let r = resultant(pivot, q, v);
        if !r.is_zero() {
            without.push(normalize(&r));
        }
    }
    dedup(without)
}

fn dedup(mut set: Vec<RationalPoly>) -> Vec<RationalPoly> {
    set.sort();
    set.dedup();
    set
}

fn try_order(
    system: &[RationalPoly],
    keep: usize,
    order: Option<&[usize]>,
) -> Option<std::result::Result<UPoly, String>> {
    let nv = system.first()?.nvars();
    let mut set: Vec<RationalPoly> =
        dedup(system.iter().filter(|p| !p.is_zero()).map(normalize).collect());
    let mut remaining: Vec<usize> = (0..nv).filter(|&v| v != keep).collect();
    let mut step = 0;
    while !remaining.is_empty() {
        let v = match order {
            Some(o) => o[step],
            None => next_variable(&set, &remaining),
        };
        step += 1;
        remaining.retain(|&r| r != v);
        set = eliminate_variable(set, v);
    }
    let mut result: Option<UPoly> = None;
    for p in &set {
        if p.is_constant() {
            // A nonzero constant in the ideal: no common solutions at all.
            return Some(Err("system is inconsistent (nonzero constant eliminant)".into()));
        }
        let Some(coeffs) = p.as_univariate(keep) else { continue };
        let u = UPoly::new(coeffs);
        result = Some(match result {
            None => u,
            Some(acc) => acc.gcd(&u),
        });
    }
    let u = result?;
    if u.degree() == 0 {
        return Some(Err("eliminants have no common root".into()));
    }
    Some(Ok(u.square_free()))
}

/// Integer polynomial (lowest degree first, content 1, positive leading
/// coefficient) vanishing on the `keep` coordinate of every solution.
pub fn eliminate(system: &[RationalPoly], keep: usize) -> Result<Vec<BigInt>> {
    let nv = system.first().map(|p| p.nvars()).unwrap_or(0);
    if nv == 0 || keep >= nv {
        return Err(Error::Elimination(format!("variable {keep} out of range")));
    }
    if nv > MAX_ELIMINATION_VARS {
        return Err(Error::CapExceeded { cap: "elimination variables", limit: MAX_ELIMINATION_VARS });
    }
    let others: Vec<usize> = (0..nv).filter(|&v| v != keep).collect();
    let mut orders: Vec<Option<Vec<usize>>> = vec![None];
    orders.extend(permutations(&others).into_iter().map(Some));
    let mut last_err = String::from("every elimination order produced a zero eliminant");
    for order in &orders {
        match try_order(system, keep, order.as_deref()) {
            Some(Ok(u)) => return Ok(u.to_integer_primitive()),
            Some(Err(e)) => last_err = e,
            None => {}
        }
    }
    Err(Error::Elimination(last_err))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoordinateCertificate {
    pub variable: String,
    /// Integer coefficients, lowest degree first.
    pub polynomial: Vec<String>,
    /// The polynomial written in the variable `t`, e.g. `2t - 1`.
    pub text: String,
    pub value: [f64; 2],
    /// Root of the polynomial matched to the numeric value.
    pub matched_root: [f64; 2],
    pub root_distance: f64,
    /// `|p(value)|` and the bound it must respect.
    pub residual: f64,
    pub residual_bound: f64,
    /// Set when the value rationalizes to an exact root.
    pub exact_rational_root: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraicityCertificate {
    pub coordinates: Vec<CoordinateCertificate>,
}

/// Tolerance for matching a numeric coordinate to a root of its certificate.
pub const ROOT_MATCH_TOL: f64 = 1e-8;

/// Certificates for every coordinate of every solution.
pub fn certify(inst: &Instance, solutions: &[Solution]) -> Result<Vec<AlgebraicityCertificate>> {
    let i = inst.ty.interior_count();
    if i > MAX_CERTIFY_INTERIOR {
        return Err(Error::CapExceeded { cap: "certify interior vertices", limit: MAX_CERTIFY_INTERIOR });
    }
    let system = build_system(inst)?;
    let exact = system.exact_polys();
    let names = system.variables().to_vec();
    let mut annihilators = Vec::with_capacity(names.len());
    for k in 0..names.len() {
        annihilators.push(eliminate(&exact, k)?);
    }
    solutions
        .iter()
        .map(|sol| {
            let values = crate::poly::points_to_unknowns(&sol.coordinates);
            let coordinates = names
                .iter()
                .zip(&annihilators)
                .zip(values)
                .map(|((name, poly), value)| match_root(name, poly, value))
                .collect::<Result<Vec<_>>>()?;
            Ok(AlgebraicityCertificate { coordinates })
        })
        .collect()
}

/// Match `value` to a root of the integer polynomial `poly`.
pub fn match_root(name: &str, poly: &[BigInt], value: C64) -> Result<CoordinateCertificate> {
    let u = UPoly::from_integers(poly);
    let degree = u.degree();
    let coeffs: Vec<f64> = poly.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    let max_coeff = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let residual = univariate::eval_f64(&coeffs, value).norm();
    let residual_bound = degree as f64
        * max_coeff
        * ROOT_MATCH_TOL
        * value.norm().max(1.0).powi(degree.saturating_sub(1) as i32);
    let root = univariate::newton_root(&coeffs, value);
    let root_distance = (root - value).norm();
    let exact_rational_root = if value.im.abs() < 1e-9 {
        let q = rationalize(value.re, 1_000_000_000_000);
        u.eval(&q).is_zero().then(|| q.to_string())
    } else {
        None
    };
    if root_distance > ROOT_MATCH_TOL && exact_rational_root.is_none() {
        return Err(Error::Certificate(format!(
            "{name} = {value} lies {root_distance:e} from the nearest root of its annihilator"
        )));
    }
    Ok(CoordinateCertificate {
        variable: name.to_string(),
        polynomial: poly.iter().map(|c| c.to_string()).collect(),
        text: format_integer_poly(poly, "t"),
        value: [value.re, value.im],
        matched_root: [root.re, root.im],
        root_distance,
        residual,
        residual_bound,
        exact_rational_root,
    })
}

/// Exact value of an integer polynomial (lowest first) at a rational.
pub fn eval_integer_poly(poly: &[BigInt], x: &BigRational) -> BigRational {
    UPoly::from_integers(poly).eval(x)
}

/// `2t - 1` style rendering, highest degree first.
pub fn format_integer_poly(poly: &[BigInt], var: &str) -> String {
    let mut parts = Vec::new();
    for (d, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        let body = match d {
            0 => mag.to_string(),
            1 if mag == BigInt::from(1) => var.to_string(),
            1 => format!("{mag}{var}"),
            _ if mag == BigInt::from(1) => format!("{var}^{d}"),
            _ => format!("{mag}{var}^{d}"),
        };
        if parts.is_empty() {
            parts.push(if sign == "-" { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{sign} {body}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}
