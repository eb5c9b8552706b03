//! Univariate polynomials with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with coefficients in ascending degree order; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Functional composition `self ∘ inner`, i.e. self(inner(x)).
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| acc.mul(inner).add(&Polynomial::new(vec![c.clone()])))
    }

    /// Interpolating polynomial through the given points (distinct x),
    /// computed by Newton divided differences.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Self {
        let n = points.len();
        let xs: Vec<&BigRational> = points.iter().map(|p| &p.0).collect();
        let mut dd: Vec<BigRational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        // Horner-style expansion of the Newton form.
        let mut poly = Polynomial::zero();
        for i in (0..n).rev() {
            let factor = Polynomial::new(vec![-xs[i].clone(), BigRational::one()]);
            poly = poly.mul(&factor).add(&Polynomial::new(vec![dd[i].clone()]));
        }
        poly
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Descending-degree text such as `8192*x^8 + 98304*x^7 - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", fmt_coeff(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = Polynomial::from_ints(&[1, -2, 0, 3]);
        let pts: Vec<_> = (0..6).map(|x| (q(x), p.eval_int(x))).collect();
        assert_eq!(Polynomial::interpolate(&pts), p);
    }

    #[test]
    fn display_and_degree() {
        let p = Polynomial::from_ints(&[-1, 0, 1]);
        assert_eq!(p.to_string(), "x^2 - 1");
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_ints(&[0, -3]).to_string(), "-3*x");
    }

    #[test]
    fn composition() {
        // (x^2) ∘ (x + 1) = x^2 + 2x + 1
        let sq = Polynomial::from_ints(&[0, 0, 1]);
        let shift = Polynomial::from_ints(&[1, 1]);
        assert_eq!(sq.compose(&shift), Polynomial::from_ints(&[1, 2, 1]));
    }
}
