use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse multivariate polynomial with exact integer coefficients.
///
/// Terms are kept in a map from exponent vectors (all of length `nvars`) to
/// nonzero coefficients. The entries of a matrix pencil are linear forms in
/// the homogeneous coordinates, so the sparse map stays small even for minors
/// of moderate size.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0u16; nvars];
        exp[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(exp, BigInt::one());
        p
    }

    /// The linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[i64]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut exp = vec![0u16; nvars];
                exp[i] = 1;
                p.terms.insert(exp, BigInt::from(c));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (exp, c) = self.terms.iter().next().unwrap();
                exp.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    fn insert_term(&mut self, exp: Vec<u16>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.insert_term(exp.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u16> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.insert_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "variable count mismatch");
        let mut acc = BigRational::zero();
        for (exp, c) in &self.terms {
            let mut term = BigRational::from(c.clone());
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute the integer `value` for variable `i`; the variable count is
    /// preserved (the variable simply no longer occurs).
    pub fn substitute(&self, i: usize, value: &BigInt) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (exp, c) in &self.terms {
            let e = exp[i];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            let mut new_exp = exp.clone();
            new_exp[i] = 0;
            out.insert_term(new_exp, coeff);
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &e) in exp.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
