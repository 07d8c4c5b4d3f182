use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are stored from degree 0 upward with no trailing zeros.
/// Line restrictions of pencils are dense and of low degree, which is why the
/// univariate side uses a dense representation.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                RatPoly {
                    coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d = divisor.degree().unwrap();
        let lc_inv = divisor.leading().unwrap().recip();
        let mut rem = self.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.leading().unwrap() * &lc_inv;
            let shift = rd - d;
            quot[shift] = factor.clone();
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Self::new(sub));
        }
        (Self::new(quot), rem)
    }

    /// Monic greatest common divisor. `gcd(f, 0)` is `f` made monic; panics
    /// when both inputs are zero.
    pub fn gcd(f: &Self, g: &Self) -> Self {
        assert!(
            !(f.is_zero() && g.is_zero()),
            "gcd of two zero polynomials is undefined"
        );
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}
