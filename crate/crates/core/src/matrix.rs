//! Dense complex matrices.
//!
//! [`ComplexMatrix`] is the single carrier for operators, module elements and
//! unknowns. It wraps a column-major `nalgebra` matrix but speaks row-major at
//! its boundaries (constructors, [`ComplexMatrix::to_row_major`], the file format).
//! Arithmetic operators panic on shape mismatch like `nalgebra` does; the public
//! solver entry points validate shapes before they get that far.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
pub use num_complex::Complex64;

use crate::error::{Error, Result};

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries; rejects a wrong entry count and non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount { expected: rows * cols, got: entries.len() });
        }
        if let Some(idx) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: idx / cols.max(1), col: idx % cols.max(1) });
        }
        Ok(Self { inner: DMatrix::from_row_slice(rows, cols, &entries) })
    }

    /// Real matrix from a slice of equal-length rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::EntryCount { expected: cols, got: bad.len() });
        }
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| c64(x, 0.0))).collect();
        Self::from_row_major(rows.len(), cols, entries)
    }

    pub fn from_nalgebra(inner: DMatrix<Complex64>) -> Result<Self> {
        for j in 0..inner.ncols() {
            for i in 0..inner.nrows() {
                let z = inner[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { inner })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { inner: DMatrix::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: DMatrix::identity(n, n) }
    }

    /// Square diagonal matrix with real diagonal.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self { inner: DMatrix::from_fn(n, n, |i, j| if i == j { c64(diag[i], 0.0) } else { c64(0.0, 0.0) }) }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self { inner: DMatrix::from_fn(rows, cols, f) }
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    pub fn is_empty(&self) -> bool {
        self.rows() == 0 || self.cols() == 0
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.inner[(row, col)] = value;
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_nalgebra(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn to_row_major(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { inner: self.inner.adjoint() }
    }

    pub fn transpose(&self) -> Self {
        Self { inner: self.inner.transpose() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { inner: self.inner.map(|z| z * s) }
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self { inner: self.inner.map(|z| z * s) }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `‖M − M*‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        assert!(self.is_square(), "hermitian_defect on a non-square matrix");
        (self - &self.adjoint()).frobenius_norm()
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale(0.5)
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    /// Copy of the `nrows × ncols` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, nrows: usize, ncols: usize) -> Self {
        Self { inner: self.inner.view((row, col), (nrows, ncols)).into_owned() }
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows(), other.rows(), "hstack row mismatch");
        let (r, c1, c2) = (self.rows(), self.cols(), other.cols());
        Self::from_fn(r, c1 + c2, |i, j| if j < c1 { self.inner[(i, j)] } else { other.inner[(i, j - c1)] })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols(), other.cols(), "vstack column mismatch");
        let (r1, r2, c) = (self.rows(), other.rows(), self.cols());
        Self::from_fn(r1 + r2, c, |i, j| if i < r1 { self.inner[(i, j)] } else { other.inner[(i - r1, j)] })
    }

    /// `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let (r1, c1) = a.shape();
        let (r2, c2) = b.shape();
        Self::from_fn(r1 + r2, c1 + c2, |i, j| match (i < r1, j < c1) {
            (true, true) => a.inner[(i, j)],
            (false, false) => b.inner[(i - r1, j - c1)],
            _ => c64(0.0, 0.0),
        })
    }

    /// Columns `start..start + count`.
    pub fn columns(&self, start: usize, count: usize) -> Self {
        self.block(0, start, self.rows(), count)
    }

    /// Rows `start..start + count`.
    pub fn row_range(&self, start: usize, count: usize) -> Self {
        self.block(start, 0, count, self.cols())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.inner[(i, j)];
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b ComplexMatrix> for &'a ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &'b ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix { inner: &self.inner $op &rhs.inner }
            }
        }
        impl $trait<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                &self $op &rhs
            }
        }
        impl<'b> $trait<&'b ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &'b ComplexMatrix) -> ComplexMatrix {
                &self $op rhs
            }
        }
        impl<'a> $trait<ComplexMatrix> for &'a ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                self $op &rhs
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix { inner: -&self.inner }
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_round_trip() {
        let entries: Vec<_> = (0..6).map(|k| c64(k as f64, -(k as f64))).collect();
        let m = ComplexMatrix::from_row_major(2, 3, entries.clone()).unwrap();
        assert_eq!(m.get(0, 2), c64(2.0, -2.0));
        assert_eq!(m.get(1, 0), c64(3.0, -3.0));
        assert_eq!(m.to_row_major(), entries);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(
            ComplexMatrix::from_row_major(2, 2, vec![c64(1.0, 0.0); 3]),
            Err(Error::EntryCount { expected: 4, got: 3 })
        );
        let mut e = vec![c64(0.0, 0.0); 4];
        e[3] = c64(f64::NAN, 0.0);
        assert_eq!(ComplexMatrix::from_row_major(2, 2, e), Err(Error::NonFinite { row: 1, col: 1 }));
        let mut e = vec![c64(0.0, 0.0); 4];
        e[1] = c64(0.0, f64::INFINITY);
        assert!(ComplexMatrix::from_row_major(2, 2, e).is_err());
    }

    #[test]
    fn adjoint_conjugates() {
        let m = ComplexMatrix::from_row_major(1, 2, vec![c64(1.0, 2.0), c64(3.0, -4.0)]).unwrap();
        let a = m.adjoint();
        assert_eq!(a.shape(), (2, 1));
        assert_eq!(a.get(0, 0), c64(1.0, -2.0));
        assert_eq!(a.get(1, 0), c64(3.0, 4.0));
        assert_eq!(a.adjoint(), m);
    }

    #[test]
    fn stacking_and_blocks() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let b = ComplexMatrix::identity(2);
        let h = a.hstack(&b);
        assert_eq!(h.shape(), (2, 4));
        assert_eq!(h.columns(2, 2), b);
        assert_eq!(h.columns(0, 2), a);
        let v = a.vstack(&b);
        assert_eq!(v.row_range(2, 2), b);
        let d = ComplexMatrix::block_diag(&a, &b);
        assert_eq!(d.block(0, 0, 2, 2), a);
        assert!(d.block(0, 2, 2, 2).is_zero());
        assert_eq!(d.block(2, 2, 2, 2), b);
    }

    #[test]
    fn arithmetic() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!((&a * &a).is_zero());
        let s = &a + &a.adjoint();
        assert_eq!(s.hermitian_defect(), 0.0);
        assert_eq!((&s - &s).frobenius_norm(), 0.0);
        assert_eq!((-&a).get(0, 1), c64(-1.0, 0.0));
        assert_eq!(a.scale(3.0).frobenius_norm(), 3.0);
    }
}
