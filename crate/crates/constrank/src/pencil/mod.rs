//! The matrix-space data model and every rank and splitting-type
//! certification it supports.
//!
//! A [`MatrixSpace`] holds a basis M_0 ... M_n of integer a x b matrices and
//! represents the pencil `Psi(x) = sum x_i M_i` of linear forms on P^n, that
//! is, a morphism of sheaves `a.O(-1) -> b.O` whose image at a point is the
//! row span of `Psi(x)`.

pub mod certificate;
pub mod linalg;
pub mod splitting;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{MultiPoly, PrimeField};
use linalg::IntMat;

pub use certificate::{
    verify_constant_rank, verify_rank_lower, verify_rank_upper, Counterexample, LowerProof,
    Outcome, RankCertificate, Soundness, Strategy, UpperProof,
};
pub use splitting::{line_splitting_type, LineRestriction, SplittingType};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PencilError {
    #[error("basis must contain n+1 = {expected} matrices, found {found}")]
    BasisCount { expected: usize, found: usize },
    #[error("basis matrix {index} has {found} entries, expected {expected}")]
    EntryCount {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("basis matrices are linearly dependent over the rationals")]
    DependentBasis,
    #[error("matrix dimensions must be positive")]
    EmptyMatrix,
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },
    #[error("point is projectively zero")]
    ZeroPoint,
    #[error("points are projectively dependent and do not span a line")]
    DependentPoints,
    #[error("rank must satisfy r <= min(a, b) = {max}")]
    RankOutOfRange { max: usize },
    #[error("restricted pencil has generic rank {found} on the line, expected {expected}")]
    GenericRankMismatch { expected: usize, found: usize },
    #[error("{0} is not a valid prime modulus")]
    BadPrime(u64),
    #[error("exhaustive enumeration of {points} projective points refused")]
    EnumerationTooLarge { points: u128 },
    #[error("restricted pencil drops rank at special points of the line (invariant factor of degree {torsion_degree})")]
    RankDropsOnLine { torsion_degree: usize },
}

/// Raw serde image of the interchange format; validated into `MatrixSpace`.
#[derive(Serialize, Deserialize)]
struct RawSpace {
    a: usize,
    b: usize,
    n: usize,
    basis: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

/// A basis of n+1 integer a x b matrices spanning a subspace of linear maps,
/// encoded as the pencil of linear forms it induces on P^n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct MatrixSpace {
    a: usize,
    b: usize,
    n: usize,
    /// Row-major a x b matrices, one per coordinate of P^n.
    basis: Vec<Vec<i64>>,
    name: Option<String>,
}

impl TryFrom<RawSpace> for MatrixSpace {
    type Error = PencilError;
    fn try_from(raw: RawSpace) -> Result<Self, PencilError> {
        MatrixSpace::with_name(raw.a, raw.b, raw.n, raw.basis, raw.name)
    }
}

impl From<MatrixSpace> for RawSpace {
    fn from(s: MatrixSpace) -> RawSpace {
        RawSpace {
            a: s.a,
            b: s.b,
            n: s.n,
            basis: s.basis,
            name: s.name,
        }
    }
}

impl MatrixSpace {
    pub fn new(a: usize, b: usize, n: usize, basis: Vec<Vec<i64>>) -> Result<Self, PencilError> {
        Self::with_name(a, b, n, basis, None)
    }

    pub fn with_name(
        a: usize,
        b: usize,
        n: usize,
        basis: Vec<Vec<i64>>,
        name: Option<String>,
    ) -> Result<Self, PencilError> {
        if a == 0 || b == 0 {
            return Err(PencilError::EmptyMatrix);
        }
        if basis.len() != n + 1 {
            return Err(PencilError::BasisCount {
                expected: n + 1,
                found: basis.len(),
            });
        }
        for (index, m) in basis.iter().enumerate() {
            if m.len() != a * b {
                return Err(PencilError::EntryCount {
                    index,
                    expected: a * b,
                    found: m.len(),
                });
            }
        }
        // dim M = n+1 requires the flattened basis to have full row rank
        let flat = IntMat::from_fn(n + 1, a * b, |i, j| BigInt::from(basis[i][j]));
        if flat.rank() != n + 1 {
            return Err(PencilError::DependentBasis);
        }
        Ok(MatrixSpace {
            a,
            b,
            n,
            basis,
            name,
        })
    }

    pub fn rows(&self) -> usize {
        self.a
    }

    pub fn cols(&self) -> usize {
        self.b
    }

    /// Projective dimension: the space has dimension n+1.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn basis_entry(&self, k: usize, i: usize, j: usize) -> i64 {
        self.basis[k][i * self.b + j]
    }

    /// The pencil evaluated at an integer point, as an exact matrix.
    pub fn evaluate_int(&self, point: &[BigInt]) -> Result<IntMat, PencilError> {
        self.check_point_len(point.len())?;
        if point.iter().all(Zero::is_zero) {
            return Err(PencilError::ZeroPoint);
        }
        Ok(IntMat::from_fn(self.a, self.b, |i, j| {
            (0..=self.n)
                .map(|k| &point[k] * BigInt::from(self.basis_entry(k, i, j)))
                .sum()
        }))
    }

    /// The pencil evaluated at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<BigRational>, PencilError> {
        self.check_point_len(point.len())?;
        if point.iter().all(Zero::is_zero) {
            return Err(PencilError::ZeroPoint);
        }
        let mut out = vec![BigRational::zero(); self.a * self.b];
        for (k, coord) in point.iter().enumerate() {
            if coord.is_zero() {
                continue;
            }
            for i in 0..self.a {
                for j in 0..self.b {
                    out[i * self.b + j] +=
                        coord * BigRational::from(BigInt::from(self.basis_entry(k, i, j)));
                }
            }
        }
        Ok(out)
    }

    /// Exact rank at a rational point (fraction-free elimination after
    /// clearing denominators, which is harmless projectively).
    pub fn rank_at(&self, point: &[BigRational]) -> Result<usize, PencilError> {
        let scaled = primitive_integer_point(point);
        self.check_point_len(scaled.len())?;
        if scaled.iter().all(Zero::is_zero) {
            return Err(PencilError::ZeroPoint);
        }
        Ok(self.evaluate_int(&scaled)?.rank())
    }

    /// Exact rank at a point of P^n(F_p); the point must be nonzero mod p.
    pub fn rank_at_mod(&self, point: &[u64], field: &PrimeField) -> Result<usize, PencilError> {
        self.check_point_len(point.len())?;
        if point.iter().all(|&c| c % field.modulus() == 0) {
            return Err(PencilError::ZeroPoint);
        }
        let mut m = vec![0u64; self.a * self.b];
        for (k, &coord) in point.iter().enumerate() {
            let coord = coord % field.modulus();
            if coord == 0 {
                continue;
            }
            for (idx, cell) in m.iter_mut().enumerate() {
                let entry = field.reduce_i64(self.basis[k][idx]);
                *cell = field.add(*cell, field.mul(coord, entry));
            }
        }
        Ok(linalg::rank_mod_u64(&mut m, self.a, self.b, field))
    }

    /// The symbolic pencil: an a x b matrix of linear forms in x_0 ... x_n.
    pub fn symbolic(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.a)
            .map(|i| {
                (0..self.b)
                    .map(|j| {
                        let coeffs: Vec<i64> =
                            (0..=self.n).map(|k| self.basis_entry(k, i, j)).collect();
                        MultiPoly::linear_form(&coeffs)
                    })
                    .collect()
            })
            .collect()
    }

    /// The transposed space: every basis matrix transposed. Constant rank is
    /// preserved and the image splitting type swaps its 0 and -1 counts.
    pub fn transpose_dual(&self) -> MatrixSpace {
        let basis = self
            .basis
            .iter()
            .map(|m| {
                let mut t = vec![0i64; self.a * self.b];
                for i in 0..self.a {
                    for j in 0..self.b {
                        t[j * self.a + i] = m[i * self.b + j];
                    }
                }
                t
            })
            .collect();
        MatrixSpace {
            a: self.b,
            b: self.a,
            n: self.n,
            basis,
            name: self.name.as_ref().map(|n| format!("dual({n})")),
        }
    }

    /// Restrict the pencil to the line through two independent points.
    pub fn restrict_to_line(
        &self,
        p: &[BigRational],
        q: &[BigRational],
    ) -> Result<LineRestriction, PencilError> {
        let p = primitive_integer_point(p);
        let q = primitive_integer_point(q);
        self.check_point_len(p.len())?;
        self.check_point_len(q.len())?;
        if p.iter().all(Zero::is_zero) || q.iter().all(Zero::is_zero) {
            return Err(PencilError::ZeroPoint);
        }
        let pair = IntMat::from_fn(2, self.n + 1, |i, j| {
            if i == 0 {
                p[j].clone()
            } else {
                q[j].clone()
            }
        });
        if pair.rank() != 2 {
            return Err(PencilError::DependentPoints);
        }
        Ok(LineRestriction {
            rows: self.a,
            cols: self.b,
            at_p: self.evaluate_int(&p)?,
            at_q: self.evaluate_int(&q)?,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn check_point_len(&self, found: usize) -> Result<(), PencilError> {
        if found != self.n + 1 {
            return Err(PencilError::PointLength {
                expected: self.n + 1,
                found,
            });
        }
        Ok(())
    }
}

/// Scale a rational projective point to a primitive integer vector.
pub fn primitive_integer_point(point: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for c in point {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = point.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut gcd = BigInt::zero();
    for c in &ints {
        gcd = gcd.gcd(c);
    }
    if gcd.is_zero() || gcd.abs() <= BigInt::from(1) {
        ints
    } else {
        ints.into_iter().map(|c| c / &gcd).collect()
    }
}

/// Convenience: integer coordinates to rational point.
pub fn rational_point(coords: &[i64]) -> Vec<BigRational> {
    coords
        .iter()
        .map(|&c| BigRational::from(BigInt::from(c)))
        .collect()
}
