//! Dense complex matrices, just large enough for truncated Toeplitz algebra.
//!
//! Matrices here are a few hundred rows at most, so a plain row-major `Vec`
//! with a zero-skipping triple loop covers everything the crate needs. The
//! multiply skips zero entries of the left factor, which makes products with
//! shift operators (one nonzero per column) cost O(n^2) instead of O(n^3).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                let lhs_row = i * other.cols;
                let rhs_row = k * other.cols;
                for j in 0..other.cols {
                    out.data[lhs_row + j] += a * other.data[rhs_row + j];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, x)| a * x).sum()
            })
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus over a row/column sub-block.
    pub fn block_max_abs(&self, row_range: Range<usize>, col_range: Range<usize>) -> f64 {
        let mut m = 0.0f64;
        for i in row_range {
            for j in col_range.clone() {
                m = m.max(self.get(i, j).norm());
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }
}

pub(crate) fn vec_norm(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multiply_against_hand_computed_2x2() {
        let a = CMatrix::from_fn(2, 2, |i, j| c((i * 2 + j) as f64, 1.0));
        let b = CMatrix::from_fn(2, 2, |i, j| c(1.0, (i + j) as f64));
        let p = a.mul(&b).unwrap();
        // (0,0): (0+i)(1+0i) + (1+i)(1+i) = i + (0 + 2i) = 0 + 3i
        assert_eq!(p.get(0, 0), c(0.0, 3.0));
        // (1,1): (2+i)(1+i) + (3+i)(1+2i) = (1+3i) + (1+7i) = 2+10i
        assert_eq!(p.get(1, 1), c(2.0, 10.0));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = CMatrix::from_fn(2, 3, |i, j| c(i as f64, j as f64));
        let ah = a.adjoint();
        assert_eq!(ah.rows(), 3);
        assert_eq!(ah.get(2, 1), c(1.0, -2.0));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = CMatrix::zeros(2, 3);
        let b = CMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch { .. })));
        assert!(a.sub(&b).is_ok());
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        let a = CMatrix::from_fn(3, 3, |i, j| c((i + j) as f64, (i as f64) - (j as f64)));
        let e = CMatrix::identity(3);
        assert_eq!(a.mul(&e).unwrap(), a);
        assert_eq!(e.mul(&a).unwrap(), a);
    }
}
