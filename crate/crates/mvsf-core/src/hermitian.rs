//! Hermitian matrix values and the factorizations the integrals live on.
//!
//! [`HermitianMatrix`] is the central argument type of the crate: a dense
//! `p x p` complex matrix with `X = X*` enforced at construction (so the
//! diagonal is exactly real). Positive definiteness is decided by Cholesky
//! pivot positivity with threshold `1e-14 * max(diagonal)` — one code path for
//! the predicate, the factorization, and the triangular sampler.
//!
//! The eigendecomposition is a self-contained cyclic Jacobi rotation scheme
//! for complex Hermitian matrices; the library targets order `p <= 4` where
//! Jacobi converges in a handful of sweeps.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::Complex64;

/// Pivot threshold factor for positive-definiteness and singularity tests.
const PIVOT_EPS: f64 = 1e-14;

/// `p x p` complex matrix with `X = X*`, stored dense.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    p: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates Hermitian symmetry of `rows` (up to roundoff scaled by the
    /// matrix magnitude) and stores the exactly symmetrized value.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let m = ComplexMatrix::from_rows(rows)?;
        Self::from_matrix(&m, 1e-12)
    }

    /// Symmetrizes `(M + M*)/2`; errors if the anti-Hermitian part exceeds
    /// `tol` relative to the matrix magnitude.
    pub fn from_matrix(m: &ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::domain("hermitian matrix must be square"));
        }
        let p = m.rows();
        let scale = m.max_abs().max(1e-300);
        let mut data = vec![Complex64::new(0.0, 0.0); p * p];
        for i in 0..p {
            for j in 0..=i {
                let a = m.at(i, j);
                let b = m.at(j, i).conj();
                if (a - b).norm() > tol * scale {
                    return Err(Error::domain("matrix is not hermitian"));
                }
                let v = (a + b) * 0.5;
                let v = if i == j { Complex64::new(v.re, 0.0) } else { v };
                data[i * p + j] = v;
                data[j * p + i] = v.conj();
            }
        }
        Ok(HermitianMatrix { p, data })
    }

    /// Builds from the diagonal (real) and the strictly lower triangle.
    /// `lower` lists entries row-major: `(1,0), (2,0), (2,1), ...`.
    pub fn from_lower_parts(diag: &[f64], lower: &[Complex64]) -> Result<Self> {
        let p = diag.len();
        if p == 0 {
            return Err(Error::domain("order must be at least 1"));
        }
        if lower.len() != p * (p - 1) / 2 {
            return Err(Error::domain("strict lower triangle has wrong length"));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); p * p];
        for (i, d) in diag.iter().enumerate() {
            data[i * p + i] = Complex64::new(*d, 0.0);
        }
        let mut k = 0;
        for i in 1..p {
            for j in 0..i {
                data[i * p + j] = lower[k];
                data[j * p + i] = lower[k].conj();
                k += 1;
            }
        }
        Ok(HermitianMatrix { p, data })
    }

    pub fn identity(p: usize) -> Self {
        Self::real_diagonal(&vec![1.0; p])
    }

    pub fn scaled_identity(p: usize, s: f64) -> Self {
        Self::real_diagonal(&vec![s; p])
    }

    pub fn real_diagonal(diag: &[f64]) -> Self {
        assert!(!diag.is_empty(), "order must be at least 1");
        let p = diag.len();
        let mut data = vec![Complex64::new(0.0, 0.0); p * p];
        for (i, d) in diag.iter().enumerate() {
            data[i * p + i] = Complex64::new(*d, 0.0);
        }
        HermitianMatrix { p, data }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.p + j]
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.p, self.p, |i, j| self.at(i, j))
    }

    pub fn add(&self, other: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.p, other.p);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        HermitianMatrix { p: self.p, data }
    }

    pub fn sub(&self, other: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.p, other.p);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        HermitianMatrix { p: self.p, data }
    }

    /// Scaling by a real factor (keeps Hermitian symmetry exact).
    pub fn scale(&self, s: f64) -> HermitianMatrix {
        let data = self.data.iter().map(|a| a * s).collect();
        HermitianMatrix { p: self.p, data }
    }

    /// Trace; real for a Hermitian matrix.
    pub fn trace(&self) -> f64 {
        (0..self.p).map(|i| self.at(i, i).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Congruence `A X A*`, Hermitian by construction (symmetrized exactly).
    pub fn congruence(&self, a: &ComplexMatrix) -> HermitianMatrix {
        assert!(a.is_square() && a.rows() == self.p);
        let m = a.mul(&self.to_matrix()).mul(&a.adjoint());
        HermitianMatrix::from_matrix(&m, 1e-6).expect("congruence preserves hermitian symmetry")
    }

    /// Absolute value of the determinant. The determinant of a Hermitian
    /// matrix is real; this is its magnitude.
    pub fn abs_det(&self) -> f64 {
        self.to_matrix().abs_det()
    }

    /// True iff all leading principal minors are strictly positive, decided
    /// by Cholesky pivot positivity.
    pub fn is_positive_definite(&self) -> bool {
        self.cholesky().is_ok()
    }

    /// Unique factorization `X = T T*` with `T` lower triangular and real
    /// positive diagonal. Fails with [`Error::NotPositiveDefinite`] as soon as
    /// a pivot drops below `1e-14 * max(diagonal)`.
    pub fn cholesky(&self) -> Result<LowerTriangular> {
        let p = self.p;
        let max_diag = (0..p).map(|i| self.at(i, i).re).fold(0.0, f64::max);
        let pivot_floor = PIVOT_EPS * max_diag.max(1e-300);
        let mut t = vec![Complex64::new(0.0, 0.0); p * p];
        for j in 0..p {
            let mut s = self.at(j, j).re;
            for k in 0..j {
                s -= t[j * p + k].norm_sqr();
            }
            if !(s > pivot_floor) {
                return Err(Error::NotPositiveDefinite);
            }
            let tjj = s.sqrt();
            t[j * p + j] = Complex64::new(tjj, 0.0);
            for i in (j + 1)..p {
                let mut v = self.at(i, j);
                for k in 0..j {
                    v -= t[i * p + k] * t[j * p + k].conj();
                }
                t[i * p + j] = v / tjj;
            }
        }
        Ok(LowerTriangular { p, data: t })
    }

    /// Inverse of a nonsingular Hermitian matrix; the result is Hermitian.
    pub fn inverse(&self) -> Result<HermitianMatrix> {
        let inv = self.to_matrix().inverse()?;
        HermitianMatrix::from_matrix(&inv, 1e-6)
    }

    /// Hermitian positive definite square root `S` with `S S = X`, via the
    /// Jacobi eigendecomposition.
    pub fn pd_sqrt(&self) -> Result<HermitianMatrix> {
        // Cholesky is the positive-definiteness gate (one code path).
        self.cholesky()?;
        let (eigs, q) = self.eigh();
        if eigs.iter().any(|&l| l <= 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let sqrt_diag: Vec<f64> = eigs.iter().map(|l| l.sqrt()).collect();
        let m = q
            .mul(&ComplexMatrix::real_diagonal(&sqrt_diag))
            .mul(&q.adjoint());
        HermitianMatrix::from_matrix(&m, 1e-6)
    }

    /// Eigenvalues (ascending) and a unitary matrix of eigenvectors, by
    /// cyclic complex Jacobi rotations.
    pub fn eigh(&self) -> (Vec<f64>, ComplexMatrix) {
        let p = self.p;
        let mut a = self.data.clone();
        let mut q = ComplexMatrix::identity(p);
        let scale = self.max_abs().max(1e-300);

        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for i in 0..p {
                for j in (i + 1)..p {
                    off = off.max(a[i * p + j].norm());
                }
            }
            if off <= 1e-15 * scale {
                break;
            }
            for pp in 0..p {
                for qq in (pp + 1)..p {
                    let apq = a[pp * p + qq];
                    let abs_apq = apq.norm();
                    if abs_apq <= 1e-17 * scale {
                        continue;
                    }
                    let app = a[pp * p + pp].re;
                    let aqq = a[qq * p + qq].re;
                    let phase = apq / abs_apq;
                    let tau = (aqq - app) / (2.0 * abs_apq);
                    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                    let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // A <- R* A R with R = I except
                    // R[pp][pp]=c, R[pp][qq]=s*phase, R[qq][pp]=-s*conj(phase), R[qq][qq]=c.
                    let sp = phase * s;
                    for k in 0..p {
                        let akp = a[k * p + pp];
                        let akq = a[k * p + qq];
                        a[k * p + pp] = akp * c - akq * sp.conj();
                        a[k * p + qq] = akp * sp + akq * c;
                    }
                    for k in 0..p {
                        let apk = a[pp * p + k];
                        let aqk = a[qq * p + k];
                        a[pp * p + k] = apk * c - aqk * sp;
                        a[qq * p + k] = apk * sp.conj() + aqk * c;
                    }
                    // keep the pair exactly hermitian against drift
                    a[pp * p + qq] = Complex64::new(0.0, 0.0);
                    a[qq * p + pp] = Complex64::new(0.0, 0.0);
                    a[pp * p + pp] = Complex64::new(a[pp * p + pp].re, 0.0);
                    a[qq * p + qq] = Complex64::new(a[qq * p + qq].re, 0.0);

                    for k in 0..p {
                        let qkp = q.at(k, pp);
                        let qkq = q.at(k, qq);
                        q.set(k, pp, qkp * c - qkq * sp.conj());
                        q.set(k, qq, qkp * sp + qkq * c);
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&i, &j| {
            a[i * p + i]
                .re
                .partial_cmp(&a[j * p + j].re)
                .expect("eigenvalues are finite")
        });
        let eigs: Vec<f64> = order.iter().map(|&i| a[i * p + i].re).collect();
        let vectors = ComplexMatrix::from_fn(p, p, |i, j| q.at(i, order[j]));
        (eigs, vectors)
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_norm(&self) -> f64 {
        let (eigs, _) = self.eigh();
        eigs.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }

    /// Eigenvalue condition number `max|l| / min|l|` (infinite when singular).
    pub fn condition_number(&self) -> f64 {
        let (eigs, _) = self.eigh();
        let max = eigs.iter().map(|l| l.abs()).fold(0.0, f64::max);
        let min = eigs.iter().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
        max / min
    }
}

/// Lower triangular complex matrix with real, strictly positive diagonal —
/// the factor type of the `X = T T*` decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangular {
    p: usize,
    data: Vec<Complex64>,
}

impl LowerTriangular {
    /// Builds from the real positive diagonal and the strictly lower entries
    /// in row-major order `(1,0), (2,0), (2,1), ...`.
    pub fn from_parts(diag: &[f64], lower: &[Complex64]) -> Result<Self> {
        let p = diag.len();
        if p == 0 {
            return Err(Error::domain("order must be at least 1"));
        }
        if diag.iter().any(|d| !(*d > 0.0)) {
            return Err(Error::domain("diagonal must be real positive"));
        }
        if lower.len() != p * (p - 1) / 2 {
            return Err(Error::domain("strict lower triangle has wrong length"));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); p * p];
        for (i, d) in diag.iter().enumerate() {
            data[i * p + i] = Complex64::new(*d, 0.0);
        }
        let mut k = 0;
        for i in 1..p {
            for j in 0..i {
                data[i * p + j] = lower[k];
                k += 1;
            }
        }
        Ok(LowerTriangular { p, data })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.p + j]
    }

    /// Diagonal entry as a real number.
    #[inline]
    pub fn diag(&self, j: usize) -> f64 {
        self.data[j * self.p + j].re
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.p, self.p, |i, j| self.at(i, j))
    }

    /// `T T*`, the Hermitian positive definite matrix this factor represents.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let m = self.to_matrix();
        let prod = m.mul(&m.adjoint());
        HermitianMatrix::from_matrix(&prod, 1e-10).expect("T T* is hermitian")
    }
}

/// Real symmetric matrix, the real-case counterpart of [`HermitianMatrix`]
/// (used by the order-2 real gamma/beta parametrizations and their tests).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    p: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.len();
        if p == 0 || rows.iter().any(|r| r.len() != p) {
            return Err(Error::domain("symmetric matrix must be square"));
        }
        for i in 0..p {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::domain("matrix is not symmetric"));
                }
            }
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(SymmetricMatrix { p, data })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.p + j]
    }

    pub fn to_hermitian(&self) -> HermitianMatrix {
        let m = ComplexMatrix::from_fn(self.p, self.p, |i, j| Complex64::new(self.at(i, j), 0.0));
        HermitianMatrix::from_matrix(&m, 0.0).expect("symmetric is hermitian")
    }

    pub fn det(&self) -> f64 {
        let mut a = self.data.clone();
        crate::matrix::real_det_in_place(self.p, &mut a)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.to_hermitian().is_positive_definite()
    }
}

/// Random Hermitian matrix: diagonal N(0,1), off-diagonal complex with
/// independent N(0, 1/2) parts. Not necessarily definite.
pub fn random_hermitian<R: Rng + ?Sized>(p: usize, rng: &mut R) -> HermitianMatrix {
    let half = core::f64::consts::FRAC_1_SQRT_2;
    let diag: Vec<f64> = (0..p).map(|_| StandardNormal.sample(rng)).collect();
    let lower: Vec<Complex64> = (0..p * (p - 1) / 2)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re * half, im * half)
        })
        .collect();
    HermitianMatrix::from_lower_parts(&diag, &lower).expect("valid construction")
}

/// Random well-conditioned Hermitian positive definite matrix, built as
/// `L L* + 0.1 I` from a random triangular factor.
pub fn random_pd<R: Rng + ?Sized>(p: usize, rng: &mut R) -> HermitianMatrix {
    let diag: Vec<f64> = (0..p).map(|_| rng.random_range(0.6..1.6)).collect();
    let lower: Vec<Complex64> = (0..p * (p - 1) / 2)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re * 0.4, im * 0.4)
        })
        .collect();
    let t = LowerTriangular::from_parts(&diag, &lower).expect("valid construction");
    t.reconstruct()
        .add(&HermitianMatrix::scaled_identity(p, 0.1))
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
    fn abs_det_examples() {
        assert_relative_eq!(HermitianMatrix::identity(2).abs_det(), 1.0);
        assert_relative_eq!(HermitianMatrix::real_diagonal(&[2.0, 3.0]).abs_det(), 6.0);
        // 2x2 expansion: x1*x3 - (x2^2 + y2^2) = 1 - 0.5
        let x = HermitianMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.5)],
            vec![c(0.5, -0.5), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_relative_eq!(x.abs_det(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn positive_definite_examples() {
        assert!(HermitianMatrix::identity(2).is_positive_definite());
        // singular boundary: determinant zero
        let singular = HermitianMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!(!singular.is_positive_definite());
        // 4 - 2 = 2 > 0
        let pd = HermitianMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(1.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        assert!(pd.is_positive_definite());
    }

    #[test]
    fn cholesky_examples() {
        for p in 1..4 {
            let t = HermitianMatrix::identity(p).cholesky().unwrap();
            for i in 0..p {
                assert_relative_eq!(t.diag(i), 1.0);
            }
        }
        let t = HermitianMatrix::real_diagonal(&[4.0, 9.0]).cholesky().unwrap();
        assert_relative_eq!(t.diag(0), 2.0);
        assert_relative_eq!(t.diag(1), 3.0);

        // hand-solved 2x2 recursion
        let x = HermitianMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(1.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let t = x.cholesky().unwrap();
        let s2 = 2.0f64.sqrt();
        assert_relative_eq!(t.diag(0), s2, epsilon = 1e-15);
        assert_relative_eq!(t.at(1, 0).re, 1.0 / s2, epsilon = 1e-15);
        assert_relative_eq!(t.at(1, 0).im, -1.0 / s2, epsilon = 1e-15);
        assert_relative_eq!(t.diag(1), 1.0, epsilon = 1e-15);
        let rec = t.reconstruct();
        assert!(rec.sub(&x).frobenius_norm() < 1e-12 * x.frobenius_norm());

        let not_pd = HermitianMatrix::real_diagonal(&[1.0, -1.0]);
        assert_eq!(not_pd.cholesky(), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn inverse_examples() {
        let i2 = HermitianMatrix::identity(2);
        assert!(i2.inverse().unwrap().sub(&i2).frobenius_norm() < 1e-15);
        let d = HermitianMatrix::real_diagonal(&[2.0, 4.0]).inverse().unwrap();
        assert_relative_eq!(d.at(0, 0).re, 0.5);
        assert_relative_eq!(d.at(1, 1).re, 0.25);

        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for p in 1..4 {
            for _ in 0..30 {
                let x = random_pd(p, &mut rng);
                let y = x.inverse().unwrap();
                let resid = x
                    .to_matrix()
                    .mul(&y.to_matrix())
                    .sub(&ComplexMatrix::identity(p))
                    .frobenius_norm();
                assert!(resid < 1e-10, "inverse residual {resid}");
            }
        }

        let singular = HermitianMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn pd_sqrt_examples() {
        let i2 = HermitianMatrix::identity(2);
        assert!(i2.pd_sqrt().unwrap().sub(&i2).frobenius_norm() < 1e-12);
        let s = HermitianMatrix::real_diagonal(&[4.0, 16.0]).pd_sqrt().unwrap();
        assert_relative_eq!(s.at(0, 0).re, 2.0, epsilon = 1e-12);
        assert_relative_eq!(s.at(1, 1).re, 4.0, epsilon = 1e-12);

        let x = HermitianMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let s = x.pd_sqrt().unwrap();
        let s2 = HermitianMatrix::from_matrix(&s.to_matrix().mul(&s.to_matrix()), 1e-8).unwrap();
        assert!(s2.sub(&x).frobenius_norm() < 1e-10);

        assert_eq!(
            HermitianMatrix::real_diagonal(&[1.0, -2.0]).pd_sqrt(),
            Err(Error::NotPositiveDefinite)
        );
    }

    #[test]
    fn pd_sqrt_commutes() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for p in 1..4 {
            for _ in 0..20 {
                let x = random_pd(p, &mut rng);
                let s = x.pd_sqrt().unwrap();
                let sx = s.to_matrix().mul(&x.to_matrix());
                let xs = x.to_matrix().mul(&s.to_matrix());
                assert!(sx.sub(&xs).frobenius_norm() < 1e-10);
            }
        }
    }

    #[test]
    fn cholesky_reconstructs_random_pd() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for p in 1..4 {
            for _ in 0..200 {
                let x = random_pd(p, &mut rng);
                let t = x.cholesky().unwrap();
                let err = t.reconstruct().sub(&x).frobenius_norm() / x.frobenius_norm();
                assert!(err < 1e-12, "reconstruction error {err}");
                // |det X| = prod t_jj^2
                let prod: f64 = (0..p).map(|j| t.diag(j) * t.diag(j)).product();
                assert_relative_eq!(x.abs_det(), prod, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn pd_predicate_matches_eigenvalue_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        let mut pd_seen = 0;
        for _ in 0..1000 {
            let p = rng.random_range(1..4usize);
            // mix indefinite and definite instances
            let x = if rng.random_range(0..2) == 0 {
                random_hermitian(p, &mut rng)
            } else {
                random_pd(p, &mut rng)
            };
            let (eigs, _) = x.eigh();
            let oracle = eigs.iter().all(|&l| l > 0.0);
            if oracle {
                pd_seen += 1;
            }
            // skip instances hugging the decision boundary, where the oracle
            // and the pivot test legitimately differ at roundoff level
            let min_abs = eigs.iter().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
            if min_abs < 1e-10 * x.max_abs() {
                continue;
            }
            assert_eq!(x.is_positive_definite(), oracle);
        }
        assert!(pd_seen > 300, "test should exercise both outcomes");
    }

    #[test]
    fn eigh_reconstructs() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for p in 1..5 {
            for _ in 0..50 {
                let x = random_hermitian(p, &mut rng);
                let (eigs, q) = x.eigh();
                let recon = q
                    .mul(&ComplexMatrix::real_diagonal(&eigs))
                    .mul(&q.adjoint());
                let err = recon.sub(&x.to_matrix()).frobenius_norm();
                assert!(err < 1e-12 * x.frobenius_norm().max(1.0), "eigh residual {err}");
                let unitary_err = q
                    .adjoint()
                    .mul(&q)
                    .sub(&ComplexMatrix::identity(p))
                    .frobenius_norm();
                assert!(unitary_err < 1e-13, "unitarity residual {unitary_err}");
            }
        }
    }

    #[test]
    fn eigh_repeated_eigenvalues() {
        let x = HermitianMatrix::scaled_identity(3, 2.5);
        let (eigs, _) = x.eigh();
        for l in eigs {
            assert_relative_eq!(l, 2.5);
        }
    }

    #[test]
    fn lower_triangular_validation() {
        assert!(LowerTriangular::from_parts(&[1.0, -1.0], &[c(0.0, 0.0)]).is_err());
        assert!(LowerTriangular::from_parts(&[1.0, 1.0], &[]).is_err());
        let t = LowerTriangular::from_parts(&[2.0, 3.0], &[c(1.0, -0.5)]).unwrap();
        assert_relative_eq!(t.reconstruct().at(0, 0).re, 4.0);
    }

    #[test]
    fn symmetric_matrix_basics() {
        let s = SymmetricMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert_relative_eq!(s.det(), 3.0);
        assert!(s.is_positive_definite());
        assert!(SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 1.0]]).is_err());
        let ind = SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(!ind.is_positive_definite());
    }

    #[test]
    fn non_hermitian_rejected() {
        let r = HermitianMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.5)],
            vec![c(0.5, 0.5), c(1.0, 0.0)],
        ]);
        assert!(r.is_err());
    }
}
