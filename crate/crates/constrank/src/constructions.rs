//! Factory for the explicit constant-rank spaces the crate certifies:
//! the surjective band, the embedded rank-r space it induces, the two
//! classical square examples (the 3x3 skew pencil and the 5x5 rank-four
//! pencil on the plane), and a certified 3-dimensional skew space of
//! corank one for small odd matrix sizes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::pencil::{verify_constant_rank, MatrixSpace, PencilError, RankCertificate, Strategy};
use crate::search;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("band requires a = b + n (got a = {a}, b = {b}, n = {n})")]
    BandShape { a: usize, b: usize, n: usize },
    #[error("rank must satisfy 1 <= r <= a (got r = {r}, a = {a})")]
    RankRange { r: usize, a: usize },
    #[error("skew candidates require odd a with 3 <= a <= 9 (got {0})")]
    SkewSize(usize),
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Search(#[from] crate::search::SearchError),
}

/// The surjective band: the pencil of shape a x b on P^n (a = b + n) whose
/// displayed b x a matrix carries x_0 ... x_n in columns i ... i+n of row i.
/// It has rank b at every point; the stored basis is the transpose of the
/// displayed matrix, so that the space maps a.O(-1) onto b.O.
pub fn banded(a: usize, b: usize, n: usize) -> Result<MatrixSpace, ConstructionError> {
    if b == 0 || a != b + n {
        return Err(ConstructionError::BandShape { a, b, n });
    }
    let mut basis = vec![vec![0i64; a * b]; n + 1];
    for (k, matrix) in basis.iter_mut().enumerate() {
        // displayed entry (row i, col i + k) = x_k; stored transposed
        for i in 0..b {
            matrix[(i + k) * b + i] = 1;
        }
    }
    Ok(MatrixSpace::with_name(a, b, n, basis, Some(format!("banded({a},{b},{n})")))?)
}

/// The embedded constant-rank-r space of a x a matrices on P^(a-r): the
/// band surjection onto r.O followed by the inclusion r.O into a.O. It
/// realizes dimension a - r + 1.
pub fn embedded(r: usize, a: usize) -> Result<MatrixSpace, ConstructionError> {
    if r < 1 || r > a {
        return Err(ConstructionError::RankRange { r, a });
    }
    let n = a - r;
    let band = banded(a, r, n)?;
    let mut basis = vec![vec![0i64; a * a]; n + 1];
    for (k, matrix) in basis.iter_mut().enumerate() {
        for i in 0..a {
            for j in 0..r {
                matrix[i * a + j] = band.basis_entry(k, i, j);
            }
        }
    }
    Ok(MatrixSpace::with_name(a, a, n, basis, Some(format!("embedded({r},{a})")))?)
}

/// The skew 3x3 pencil on P^2; constant rank 2, image of first Chern
/// class -1.
pub fn skew3() -> MatrixSpace {
    let m0 = vec![0, 0, 0, 0, 0, 1, 0, -1, 0];
    let m1 = vec![0, 0, -1, 0, 0, 0, 1, 0, 0];
    let m2 = vec![0, 1, 0, -1, 0, 0, 0, 0, 0];
    MatrixSpace::with_name(3, 3, 2, vec![m0, m1, m2], Some("skew3".to_string()))
        .expect("fixed basis is independent")
}

/// The classical 5x5 pencil of constant rank 4 on P^2, stored entry for
/// entry in its usual displayed form:
///
/// ```text
///   0   -x2   0   -x0   0
///   x2   0    0   -x1  -x0
///   0    0    0   -x2  -x1
///   x0   x1   x2   0    0
///   0    x0   x1   0    0
/// ```
pub fn westwick5() -> MatrixSpace {
    let rows = [
        ["0", "-x2", "0", "-x0", "0"],
        ["x2", "0", "0", "-x1", "-x0"],
        ["0", "0", "0", "-x2", "-x1"],
        ["x0", "x1", "x2", "0", "0"],
        ["0", "x0", "x1", "0", "0"],
    ];
    let mut basis = vec![vec![0i64; 25]; 3];
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if *cell == "0" {
                continue;
            }
            let (sign, var) = match cell.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, *cell),
            };
            let k: usize = var[1..].parse().unwrap();
            basis[k][i * 5 + j] = sign;
        }
    }
    MatrixSpace::with_name(5, 5, 2, basis, Some("westwick5".to_string()))
        .expect("fixed basis is independent")
}

/// Outcome of the structured skew-space search.
#[derive(Debug, Serialize)]
pub enum SkewSearchOutcome {
    Found {
        space: MatrixSpace,
        certificate: RankCertificate,
        primes: Vec<u64>,
    },
    Exhausted {
        attempts: u64,
        detail: String,
    },
}

/// A 3-dimensional space of a x a skew matrices of constant rank a - 1 for
/// odd a with 3 <= a <= 9.
///
/// For a = 3 this is exactly [`skew3`]. Otherwise the first candidate is a
/// structured one: the three generators of the irreducible action on binary
/// forms of degree a-1, each multiplied by the invariant pairing so the
/// matrices become skew-symmetric with integer entries. Every nonzero
/// element of that space has one-dimensional kernel, over any field whose
/// characteristic exceeds a-1, so the candidate is certified over primes
/// above a-1. If certification fails, a seeded random search over skew
/// subspaces mod 3 is tried before reporting exhaustion.
pub fn skew_search_candidate(a: usize) -> Result<SkewSearchOutcome, ConstructionError> {
    if !(3..=9).contains(&a) || a.is_multiple_of(2) {
        return Err(ConstructionError::SkewSize(a));
    }
    if a == 3 {
        let space = skew3();
        let primes = vec![5u64, 7, 11, 13];
        let certificate =
            verify_constant_rank(&space, 2, &Strategy::ExhaustivePrimes { primes: primes.clone() })?;
        return Ok(SkewSearchOutcome::Found {
            space,
            certificate,
            primes,
        });
    }
    let m = a - 1;
    let primes: Vec<u64> = [5u64, 7, 11, 13, 17]
        .into_iter()
        .filter(|&p| p > m as u64)
        .take(4)
        .collect();
    let candidate = sl2_skew(a);
    let certificate = verify_constant_rank(
        &candidate,
        m,
        &Strategy::ExhaustivePrimes { primes: primes.clone() },
    )?;
    if certificate.verified() {
        return Ok(SkewSearchOutcome::Found {
            space: candidate,
            certificate,
            primes,
        });
    }
    // fallback: seeded random skew subspaces over F_3, lifted to {-1, 0, 1}
    let trials = 20_000u64;
    let spec = search::SearchSpec {
        a,
        b: a,
        r: m,
        dim: 3,
        p: 3,
        mode: search::Mode::Random {
            trials: trials as u32,
            seed: 0xA5C3,
        },
        ansatz: search::Ansatz::SkewSymmetric,
        ceiling: search::DEFAULT_CEILING,
    };
    let report = search::search(&spec)?;
    for witness in &report.witnesses {
        let lifted = lift_mod3_signed(witness);
        if let Ok(cert) = verify_constant_rank(
            &lifted,
            m,
            &Strategy::ExhaustivePrimes { primes: primes.clone() },
        ) {
            if cert.verified() {
                return Ok(SkewSearchOutcome::Found {
                    space: lifted,
                    certificate: cert,
                    primes,
                });
            }
        }
    }
    Ok(SkewSearchOutcome::Exhausted {
        attempts: trials,
        detail: format!(
            "structured candidate failed certification and {trials} random skew \
             subspaces mod 3 produced no liftable witness"
        ),
    })
}

/// Replace residues mod 3 by their signed representatives in {-1, 0, 1}.
fn lift_mod3_signed(space: &MatrixSpace) -> MatrixSpace {
    let (a, b, n) = (space.rows(), space.cols(), space.ambient_dim());
    let basis: Vec<Vec<i64>> = (0..=n)
        .map(|k| {
            (0..a * b)
                .map(|idx| {
                    let v = space.basis_entry(k, idx / b, idx % b).rem_euclid(3);
                    if v == 2 {
                        -1
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    MatrixSpace::new(a, b, n, basis).expect("signed lift preserves independence")
}

/// The three skew integer matrices spanning the structured candidate: the
/// raising, lowering and weight operators on binary forms of degree m,
/// twisted by the invariant symmetric pairing.
fn sl2_skew(a: usize) -> MatrixSpace {
    let m = a - 1;
    let mi = m as i64;
    // invariant pairing: antidiagonal q_i = (-1)^i * lcm(C(m, .)) / C(m, i)
    let binoms: Vec<BigInt> = (0..=mi).map(|i| crate::exact::binomial(mi, i)).collect();
    let lcm = binoms
        .iter()
        .fold(BigInt::from(1), |acc, b| acc.lcm(b));
    let q: Vec<BigInt> = binoms
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let v = &lcm / b;
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    // raising: E[i-1][i] = i; lowering: F[i+1][i] = m - i; weight: H[i][i] = m - 2i
    let mut qe = vec![BigInt::zero(); a * a];
    let mut qf = vec![BigInt::zero(); a * a];
    let mut qh = vec![BigInt::zero(); a * a];
    for i in 0..a {
        let anti = m - i; // Q[i][anti] = q[i]
        // (Q E)[i][j] = q[i] * E[anti][j]; E[anti][j] nonzero iff j = anti + 1
        if anti < m {
            qe[i * a + anti + 1] = &q[i] * BigInt::from((anti + 1) as i64);
        }
        // (Q F)[i][j]: F[anti][j] nonzero iff j = anti - 1, value m - (anti - 1)
        if anti >= 1 {
            qf[i * a + anti - 1] = &q[i] * BigInt::from((m - anti + 1) as i64);
        }
        // (Q H)[i][anti] = q[i] * (m - 2*anti)
        qh[i * a + anti] = &q[i] * BigInt::from(mi - 2 * anti as i64);
    }
    let to_primitive = |v: Vec<BigInt>| -> Vec<i64> {
        let g = crate::exact::content(&v);
        v.into_iter()
            .map(|c| {
                let c = if g.is_zero() { c } else { c / &g };
                i64::try_from(c).expect("entries stay small for a <= 9")
            })
            .collect()
    };
    MatrixSpace::with_name(
        a,
        a,
        2,
        vec![to_primitive(qe), to_primitive(qf), to_primitive(qh)],
        Some(format!("skew-spin({a})")),
    )
    .expect("generators are independent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::rational_point;

    #[test]
    fn banded_shape_and_rank() {
        let s = banded(3, 2, 1).unwrap();
        assert_eq!((s.rows(), s.cols(), s.ambient_dim()), (3, 2, 1));
        assert_eq!(s.rank_at(&rational_point(&[1, 0])).unwrap(), 2);
        assert!(banded(4, 2, 1).is_err());
    }

    #[test]
    fn degenerate_band_is_identity() {
        let s = banded(3, 3, 0).unwrap();
        assert_eq!(s.rank_at(&rational_point(&[1])).unwrap(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.basis_entry(0, i, j), (i == j) as i64);
            }
        }
    }

    #[test]
    fn embedded_dimension_and_rank() {
        let s = embedded(3, 7).unwrap();
        assert_eq!((s.rows(), s.cols(), s.ambient_dim()), (7, 7, 4));
        assert_eq!(s.rank_at(&rational_point(&[1, 2, -1, 3, 5])).unwrap(), 3);
        let square = embedded(4, 4).unwrap();
        assert_eq!(square.ambient_dim(), 0);
        assert_eq!(square.rank_at(&rational_point(&[1])).unwrap(), 4);
        let tiny = embedded(1, 2).unwrap();
        assert_eq!(tiny.ambient_dim(), 1);
        assert_eq!(tiny.rank_at(&rational_point(&[2, 3])).unwrap(), 1);
        assert!(embedded(0, 3).is_err());
        assert!(embedded(5, 3).is_err());
    }

    #[test]
    fn skew3_rank_at_basis_point() {
        let s = skew3();
        assert_eq!(s.rank_at(&rational_point(&[1, 0, 0])).unwrap(), 2);
    }

    #[test]
    fn westwick5_matches_display() {
        let s = westwick5();
        // spot checks against the displayed matrix
        assert_eq!(s.basis_entry(2, 0, 1), -1); // -x2 at (0,1)
        assert_eq!(s.basis_entry(2, 1, 0), 1); // x2 at (1,0)
        assert_eq!(s.basis_entry(0, 3, 0), 1); // x0 at (3,0)
        assert_eq!(s.basis_entry(1, 2, 4), -1); // -x1 at (2,4)
        assert_eq!(s.basis_entry(0, 1, 4), -1); // -x0 at (1,4)
        assert_eq!(s.rank_at(&rational_point(&[1, 1, 1])).unwrap(), 4);
    }

    #[test]
    fn spin_candidate_is_skew() {
        for a in [5usize, 7, 9] {
            let s = sl2_skew(a);
            for k in 0..=2 {
                for i in 0..a {
                    for j in 0..a {
                        assert_eq!(
                            s.basis_entry(k, i, j),
                            -s.basis_entry(k, j, i),
                            "a={a} k={k} ({i},{j})"
                        );
                    }
                }
            }
        }
    }
}
