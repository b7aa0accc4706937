//! Dense complex matrices of arbitrary (small) shape.
//!
//! [`ComplexMatrix`] is the unconstrained workhorse behind the Hermitian
//! types: products, adjoints, LU determinants and inverses. Everything is
//! row-major `Vec<Complex64>` storage; no attempt is made at large-dimension
//! performance.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::Complex64;

/// Relative pivot threshold below which a factorization is declared singular.
pub(crate) const SINGULARITY_EPS: f64 = 1e-14;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from a row-of-rows layout; rows must be equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::domain("matrix must have at least one entry"));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged rows in matrix literal"));
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(ComplexMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(*d, 0.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let c = self.cols;
        self.data[i * c + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| s * self.at(i, j))
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Determinant by LU with partial pivoting. Returns exactly zero when a
    /// pivot falls below the singularity threshold.
    pub fn det(&self) -> Complex64 {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let scale = self.max_abs();
        if scale == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let mut piv = k;
            let mut best = a[k * n + k].norm();
            for i in (k + 1)..n {
                let v = a[i * n + k].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best < SINGULARITY_EPS * scale {
                return Complex64::new(0.0, 0.0);
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det *= pivot;
            for i in (k + 1)..n {
                let factor = a[i * n + k] / pivot;
                a[i * n + k] = factor;
                for j in (k + 1)..n {
                    let v = a[k * n + j];
                    a[i * n + j] -= factor * v;
                }
            }
        }
        det
    }

    pub fn abs_det(&self) -> f64 {
        self.det().norm()
    }

    /// Inverse by Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<ComplexMatrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.data.clone();
        let mut inv = ComplexMatrix::identity(n);
        for k in 0..n {
            let mut piv = k;
            let mut best = a[k * n + k].norm();
            for i in (k + 1)..n {
                let v = a[i * n + k].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best < SINGULARITY_EPS * scale {
                return Err(Error::SingularMatrix);
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                    inv.data.swap(k * n + j, piv * n + j);
                }
            }
            let pivot = a[k * n + k];
            for j in 0..n {
                a[k * n + j] /= pivot;
                inv.data[k * n + j] /= pivot;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a[i * n + k];
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let av = a[k * n + j];
                    let iv = inv.data[k * n + j];
                    a[i * n + j] -= factor * av;
                    inv.data[i * n + j] -= factor * iv;
                }
            }
        }
        Ok(inv)
    }
}

/// Determinant of a small dense real matrix, in place, by LU with partial
/// pivoting. Shared by the finite-difference Jacobian verifier and the
/// Jacobi-Trudi evaluation of Schur polynomials.
pub(crate) fn real_det_in_place(n: usize, a: &mut [f64]) -> f64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = 1.0;
    for k in 0..n {
        let mut piv = k;
        let mut best = a[k * n + k].abs();
        for i in (k + 1)..n {
            let v = a[i * n + k].abs();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in (k + 1)..n {
            let factor = a[i * n + k] / pivot;
            for j in (k + 1)..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    det
}

/// Random matrix with independent standard complex Gaussian entries
/// (real and imaginary parts each N(0, 1/2)).
pub fn random_complex<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let half = core::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re * half, im * half)
    })
}

/// Random square complex matrix kept away from singularity, for use as a
/// transform constant in Jacobian checks.
pub fn random_nonsingular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = random_complex(n, n, rng);
        let shifted = g.add(&ComplexMatrix::identity(n).scale(Complex64::new(1.5, 0.0)));
        if shifted.abs_det() > 0.3 {
            return shifted;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_roundtrip() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i3.mul(&i3), i3);
        assert_relative_eq!(i3.abs_det(), 1.0);
        assert_eq!(i3.inverse().unwrap(), i3);
    }

    #[test]
    fn det_2x2_complex() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.5)],
            vec![c(0.5, -0.5), c(1.0, 0.0)],
        ])
        .unwrap();
        // 1*1 - (0.5+0.5i)(0.5-0.5i) = 1 - 0.5
        assert_relative_eq!(m.det().re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(m.det().im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn inverse_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_nonsingular(3, &mut rng);
            let inv = m.inverse().unwrap();
            let err = m.mul(&inv).sub(&ComplexMatrix::identity(3)).frobenius_norm();
            assert!(err < 1e-12, "inverse residual {err}");
        }
    }

    #[test]
    fn singular_rejected() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        assert_eq!(m.abs_det(), 0.0);
    }

    #[test]
    fn real_det_matches_complex_path() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for n in 1..6usize {
            for _ in 0..20 {
                let mut a = alloc::vec![0.0f64; n * n];
                for v in a.iter_mut() {
                    *v = rng.random_range(-1.0..1.0);
                }
                let m = ComplexMatrix::from_fn(n, n, |i, j| c(a[i * n + j], 0.0));
                let d_real = real_det_in_place(n, &mut a.clone());
                assert_relative_eq!(d_real, m.det().re, epsilon = 1e-10, max_relative = 1e-10);
            }
        }
    }
}
