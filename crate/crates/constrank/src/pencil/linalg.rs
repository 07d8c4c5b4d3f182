use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::PrimeField;

/// Dense integer matrix used for exact rank computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMat { rows, cols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Exact rank over the rationals by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * cols + j].clone();
        let mut rank = 0;
        let mut prev = BigInt::from(1);
        let mut row = 0;
        for col in 0..cols {
            // pick the pivot of smallest magnitude to slow coefficient growth
            let pivot = (row..rows)
                .filter(|&i| !m[i * cols + col].is_zero())
                .min_by_key(|&i| m[i * cols + col].abs());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..cols {
                    m.swap(row * cols + j, p * cols + j);
                }
            }
            for i in (row + 1)..rows {
                for j in (col + 1)..cols {
                    let num = at(&m, row, col) * at(&m, i, j) - at(&m, i, col) * at(&m, row, j);
                    debug_assert!((&num % &prev).is_zero(), "fraction-free step must divide");
                    m[i * cols + j] = num / &prev;
                }
                m[i * cols + col] = BigInt::zero();
            }
            prev = at(&m, row, col);
            rank += 1;
            row += 1;
            if row == rows {
                break;
            }
        }
        rank
    }

    /// Rank of the reduction mod p.
    pub fn rank_mod(&self, field: &PrimeField) -> usize {
        let cols = self.cols;
        let mut m: Vec<u64> = self.data.iter().map(|v| field.reduce_bigint(v)).collect();
        rank_mod_u64(&mut m, self.rows, cols, field)
    }
}

/// Row-reduction rank of a u64 matrix over F_p (entries already reduced).
pub fn rank_mod_u64(m: &mut [u64], rows: usize, cols: usize, field: &PrimeField) -> usize {
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| m[i * cols + col] != 0) else {
            continue;
        };
        if p != row {
            for j in 0..cols {
                m.swap(row * cols + j, p * cols + j);
            }
        }
        let inv = field.inv(m[row * cols + col]);
        for i in (row + 1)..rows {
            let factor = field.mul(m[i * cols + col], inv);
            if factor == 0 {
                continue;
            }
            for j in col..cols {
                let sub = field.mul(factor, m[row * cols + j]);
                m[i * cols + j] = field.sub(m[i * cols + j], sub);
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}
