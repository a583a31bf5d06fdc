//! Dense univariate polynomials over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::geom::C64;

/// Coefficients lowest degree first; no trailing zeros (zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * BigRational::from_integer(d.into()))
                .collect(),
        )
    }

    fn monic(&self) -> UPoly {
        match self.coeffs.last() {
            Some(lead) => UPoly { coeffs: self.coeffs.iter().map(|c| c / lead).collect() },
            None => self.clone(),
        }
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.coeffs.last().cloned().unwrap_or_else(BigRational::one);
        if r.len() < d.coeffs.len() {
            return (UPoly::new(vec![]), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn square_free(&self) -> UPoly {
        if self.degree() < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.monic()
        } else {
            self.div_rem(&g).0.monic()
        }
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn to_integer_primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }
}

/// Horner evaluation of real coefficients (lowest first) at a complex point.
pub fn eval_f64(coeffs: &[f64], x: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn eval_with_derivative(coeffs: &[f64], x: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Newton iteration on a univariate polynomial started at `x0`.
pub fn newton_root(coeffs: &[f64], x0: C64) -> C64 {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return x0;
    }
    let c: Vec<f64> = coeffs.iter().map(|v| v / scale).collect();
    let mut x = x0;
    for _ in 0..100 {
        let (p, dp) = eval_with_derivative(&c, x);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        x -= step;
        if step.norm() <= 1e-16 * (1.0 + x.norm()) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn up(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let p = up(&[2, -3, 0, 1]);
        let sf = p.square_free();
        assert_eq!(sf, up(&[-2, 1, 1]));
        let g = up(&[-1, 1]).gcd(&up(&[1, 0, -1]));
        assert_eq!(g, up(&[-1, 1]));
    }

    #[test]
    fn integer_primitive() {
        let p = UPoly::new(vec![rat(-1, 4), rat(1, 2)]);
        assert_eq!(p.to_integer_primitive(), vec![BigInt::from(-1), BigInt::from(2)]);
    }

    #[test]
    fn newton_finds_sqrt2() {
        let r = newton_root(&[-2.0, 0.0, 1.0], C64::new(1.4, 0.0));
        assert!((r.re - std::f64::consts::SQRT_2).abs() < 1e-15);
    }
}
