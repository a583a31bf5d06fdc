//! Sparse multivariate polynomials with arbitrary-precision rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::MultiPoly;

pub type Exponents = Vec<u32>;

/// Terms keyed by exponent vector; `BTreeMap` order on `Vec<u32>` is lex,
/// so the last key is the lex-leading monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoly {
    variables: Vec<String>,
    terms: BTreeMap<Exponents, BigRational>,
}

impl RationalPoly {
    pub fn zero(variables: &[String]) -> Self {
        RationalPoly { variables: variables.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(variables: &[String], c: BigRational) -> Self {
        let mut p = Self::zero(variables);
        if !c.is_zero() {
            p.terms.insert(vec![0; variables.len()], c);
        }
        p
    }

    pub fn var(variables: &[String], k: usize) -> Self {
        let mut e = vec![0; variables.len()];
        e[k] = 1;
        let mut p = Self::zero(variables);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn from_terms(
        variables: &[String],
        terms: impl IntoIterator<Item = (Exponents, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(variables);
        for (e, c) in terms {
            assert_eq!(e.len(), variables.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.degree_in(v) > 0
    }

    /// Variables with positive degree.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.involves(v)).collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.variables);
        }
        RationalPoly {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Coefficients of `v^0, v^1, ...` as polynomials free of `v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<RationalPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(&self.variables); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &RationalPoly) -> Option<RationalPoly> {
        let (de, dc) = d.leading_term()?;
        let mut r = self.clone();
        let mut q = Self::zero(&self.variables);
        while let Some((re, rc)) = r.leading_term() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponents = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = rc / dc;
            let mut t = Self::zero(&self.variables);
            t.terms.insert(e.clone(), c.clone());
            r = &r - &(&t * d);
            q.add_term(e, c);
        }
        Some(q)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute exact values for some variables (`None` keeps the variable).
    pub fn partial_eval(&self, values: &[Option<BigRational>]) -> RationalPoly {
        let mut out = Self::zero(&self.variables);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            let mut e2 = e.clone();
            for (k, val) in values.iter().enumerate() {
                if let Some(x) = val {
                    for _ in 0..e[k] {
                        t *= x;
                    }
                    e2[k] = 0;
                }
            }
            out.add_term(e2, t);
        }
        out
    }

    /// Scale to integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> RationalPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm_den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.terms.values().map(|c| (c * BigRational::from_integer(lcm_den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut factor = BigRational::new(lcm_den, g);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Divide out the largest monomial dividing every term.
    pub fn strip_monomial_factor(&self) -> RationalPoly {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.nvars();
        let min: Vec<u32> =
            (0..n).map(|k| self.terms.keys().map(|e| e[k]).min().unwrap_or(0)).collect();
        if min.iter().all(|&m| m == 0) {
            return self.clone();
        }
        RationalPoly {
            variables: self.variables.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(&min).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Univariate coefficient list (lowest degree first) if only `v` occurs.
    pub fn as_univariate(&self, v: usize) -> Option<Vec<BigRational>> {
        if self.terms.keys().any(|e| e.iter().enumerate().any(|(k, &x)| k != v && x > 0)) {
            return None;
        }
        let d = self.degree_in(v) as usize;
        let mut out = vec![BigRational::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e[v] as usize] = c.clone();
        }
        Some(out)
    }

    /// Complex-double image used by the numeric solver.
    pub fn to_numeric(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.nvars(),
            self.terms.iter().map(|(e, c)| (e.clone(), crate::geom::rat_to_f64(c).into())),
        )
    }
}

impl<'a> Add<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = RationalPoly::zero(&self.variables);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        self.variables[v].clone()
                    } else {
                        format!("{}^{}", self.variables[v], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}
