//! Exact scalar and polynomial arithmetic: arbitrary-precision integers and
//! rationals, sparse multivariate polynomials, dense univariate polynomials
//! over the rationals, and small prime fields.
//!
//! Everything here is exact; no floating point is used anywhere in the crate.

mod multipoly;
mod primefield;
mod unipoly;

pub use multipoly::MultiPoly;
pub use primefield::PrimeField;
pub use unipoly::RatPoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds the supported range (must be < 2^32)")]
    ModulusTooLarge(u64),
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
}

/// Binomial coefficient, generalized to negative upper index by the falling
/// factorial: `binomial(a, k) = a (a-1) ... (a-k+1) / k!`.
///
/// For `0 <= a < k` this is zero. Panics if `k < 0`.
pub fn binomial(a: i64, k: i64) -> BigInt {
    assert!(k >= 0, "binomial: negative lower index {k}");
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(a - i);
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= BigInt::from(i);
    }
    num / den
}

/// Elementary symmetric functions (e1, e2, e3) of a triple.
pub fn elementary_symmetric_3(f: [i64; 3]) -> (BigInt, BigInt, BigInt) {
    let [f1, f2, f3] = f.map(BigInt::from);
    let s = &f1 + &f2 + &f3;
    let d = &f1 * &f2 + &f1 * &f3 + &f2 * &f3;
    let t = f1 * f2 * f3;
    (s, d, t)
}

/// Greatest common divisor of a slice of integers (non-negative result).
pub fn content(values: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = num_integer::gcd(g, v.clone());
        if g.is_one() {
            break;
        }
    }
    g
}
