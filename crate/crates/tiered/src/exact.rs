//! Exact linear algebra over the rationals.
//!
//! Every determinant and rank in this crate goes through these routines;
//! no floating point is involved anywhere.

use num::rational::BigRational;
use num::{BigInt, One, Zero};

/// Dense matrix of exact rationals, row major.
#[derive(Debug, Clone)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigRational::from_integer(v.clone());
            }
        }
        m
    }

    /// Rank by Gaussian elimination with exact pivoting.
    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let Some(piv) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, piv);
            let inv = self[(row, col)].recip();
            for c in col..self.cols {
                let v = &self[(row, c)] * &inv;
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let f = self[(r, col)].clone();
                    for c in col..self.cols {
                        let v = &self[(r, c)] - &f * &self[(row, c)];
                        self[(r, c)] = v;
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    /// Determinant of a square matrix.
    pub fn determinant(mut self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !self[(r, col)].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                self.swap_rows(col, piv);
                det = -det;
            }
            det *= self[(col, col)].clone();
            let inv = self[(col, col)].recip();
            for r in col + 1..n {
                if !self[(r, col)].is_zero() {
                    let f = &self[(r, col)] * &inv;
                    for c in col..n {
                        let v = &self[(r, c)] - &f * &self[(col, c)];
                        self[(r, c)] = v;
                    }
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (r, c): (usize, usize)) -> &BigRational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }
}

/// Exact integer determinant; panics if the rational result is not integral.
pub fn integer_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let det = RatMatrix::from_int_rows(rows).determinant();
    assert!(det.is_integer(), "determinant of an integer matrix must be integral");
    det.to_integer()
}

/// Rank of an integer matrix.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    RatMatrix::from_int_rows(rows).rank()
}
