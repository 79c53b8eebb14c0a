//! Exact matrix rank, generic over the scalar type.
//!
//! Two independent eliminations are provided: fraction-free (Bareiss) over an
//! integral domain, and classical Gauss-Jordan over a field. Both are exact;
//! integer types report overflow instead of wrapping.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedMul, CheckedSub, Num, Signed};

use crate::error::{Error, Result};

/// Integer scalars usable for fraction-free elimination.
pub trait ExactInteger:
    Integer + Signed + Clone + CheckedMul + CheckedSub + std::fmt::Debug
{
}

impl<T> ExactInteger for T where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub + std::fmt::Debug
{
}

/// Marker for exact fields. Floating-point types are deliberately excluded.
pub trait ExactField: Num + Clone + std::fmt::Debug {}

impl<T> ExactField for Ratio<T> where T: Clone + Integer + std::fmt::Debug {}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + num_traits::Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    /// Elementwise conversion to another scalar type.
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
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

fn overflow() -> Error {
    Error::Overflow("fraction-free elimination".into())
}

/// Rank by Bareiss fraction-free elimination. Every intermediate entry is a
/// minor of the input, and the division by the previous pivot is exact.
pub fn rank_fraction_free<T: ExactInteger>(matrix: &Matrix<T>) -> Result<usize> {
    let mut m = matrix.clone();
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(pivot_row) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(rank, pivot_row);
        let pivot = m.get(rank, col).clone();
        for r in rank + 1..m.rows {
            let factor = m.get(r, col).clone();
            for c in col..m.cols {
                let a = pivot.checked_mul(m.get(r, c)).ok_or_else(overflow)?;
                let b = factor.checked_mul(m.get(rank, c)).ok_or_else(overflow)?;
                let v = a.checked_sub(&b).ok_or_else(overflow)?;
                debug_assert!(v.is_multiple_of(&prev));
                m.set(r, c, v.div_floor(&prev));
            }
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Rank by Gaussian elimination over an exact field.
pub fn rank_over_field<F: ExactField>(matrix: &Matrix<F>) -> usize {
    let mut m = matrix.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(pivot_row) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(rank, pivot_row);
        let pivot = m.get(rank, col).clone();
        for r in rank + 1..m.rows {
            let factor = m.get(r, col).clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..m.cols {
                let v = m.get(r, c).clone() - factor.clone() * m.get(rank, c).clone();
                m.set(r, c, v);
            }
        }
        rank += 1;
    }
    rank
}
