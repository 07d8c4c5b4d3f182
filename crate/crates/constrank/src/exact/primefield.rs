use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ExactError;

/// A prime field F_p with p < 2^32, so products of residues fit in a u64.
///
/// Primality is checked by deterministic trial division at construction; the
/// moduli used for verification are tiny.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if p >= 1 << 32 {
            return Err(ExactError::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Canonical ring morphism from the integers.
    pub fn reduce_bigint(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
