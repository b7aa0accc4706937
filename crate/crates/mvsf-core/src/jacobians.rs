//! Change-of-variable factors for the four matrix transformations underlying
//! the integrals, plus a finite-difference verifier for each.
//!
//! Under the wedge-product measure, a complex `m x n` matrix carries `2mn`
//! real coordinates and a Hermitian `p x p` matrix carries `p^2` (the real
//! diagonal plus re/im of the strict lower triangle); a triangular factor with
//! real positive diagonal also carries `p^2`. The flattening order is fixed:
//! diagonal first, then strict lower row-major, re before im. The analytic
//! factor of each transformation is then checkable as the absolute
//! determinant of a dense real Jacobian obtained by central differences.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, LowerTriangular};
use crate::matrix::{real_det_in_place, ComplexMatrix};
use crate::Complex64;

/// Real coordinate vector for a flattened matrix.
pub type RealCoordinates = Vec<f64>;

/// One of the four supported transformations, with its constant matrices.
#[derive(Debug, Clone)]
pub enum MatrixTransform {
    /// `Y = A X B + C` on general complex `m x n` matrices.
    LinearSandwich {
        a: ComplexMatrix,
        b: ComplexMatrix,
        c: ComplexMatrix,
    },
    /// `Y = A X A*` on Hermitian matrices.
    HermitianCongruence { a: ComplexMatrix },
    /// `X = T T*` as a map from triangular factors to Hermitian matrices.
    CholeskyFactor { p: usize },
    /// `Y = X^-1` on nonsingular Hermitian matrices.
    Inverse { p: usize },
}

/// Base point of a transformation, one variant per domain kind.
#[derive(Debug, Clone)]
pub enum TransformPoint {
    General(ComplexMatrix),
    Hermitian(HermitianMatrix),
    Triangular(LowerTriangular),
}

/// Outcome of one finite-difference Jacobian check.
#[derive(Debug, Clone, Copy)]
pub struct FdCheck {
    pub analytic: f64,
    pub numeric: f64,
    pub rel_err: f64,
}

/// `Y = A X B + C` with factor `|det(A A*)|^n |det(B B*)|^m`.
pub fn apply_linear(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    x: &ComplexMatrix,
) -> Result<(ComplexMatrix, f64)> {
    let (m, n) = (x.rows(), x.cols());
    assert!(a.is_square() && a.rows() == m, "A must be m x m");
    assert!(b.is_square() && b.rows() == n, "B must be n x n");
    assert_eq!((c.rows(), c.cols()), (m, n), "C must be m x n");
    let det_aa = a.mul(&a.adjoint()).abs_det();
    let det_bb = b.mul(&b.adjoint()).abs_det();
    if det_aa == 0.0 || det_bb == 0.0 {
        return Err(Error::SingularTransform);
    }
    let y = a.mul(x).mul(b).add(c);
    let jac = det_aa.powi(n as i32) * det_bb.powi(m as i32);
    Ok((y, jac))
}

/// `Y = A X A*` with factor `|det(A)|^(2p)`.
pub fn apply_congruence(
    a: &ComplexMatrix,
    x: &HermitianMatrix,
) -> Result<(HermitianMatrix, f64)> {
    let p = x.order();
    assert!(a.is_square() && a.rows() == p, "A must match the order of X");
    let abs_det = a.abs_det();
    if abs_det == 0.0 {
        return Err(Error::SingularTransform);
    }
    Ok((x.congruence(a), abs_det.powi(2 * p as i32)))
}

/// Factor `2^p prod_j t_jj^(2(p-j)+1)` of the map `T -> T T*`.
pub fn cholesky_jacobian(t: &LowerTriangular) -> f64 {
    let p = t.order();
    let mut jac = (1u64 << p) as f64;
    for j in 1..=p {
        jac *= t.diag(j - 1).powi(2 * (p - j) as i32 + 1);
    }
    jac
}

/// Factor `|det(X X*)|^(-p) = |det(X)|^(-2p)` of `Y = X^-1` on the Hermitian
/// branch.
pub fn inverse_jacobian(x: &HermitianMatrix) -> Result<f64> {
    let d = x.abs_det();
    if d == 0.0 {
        return Err(Error::SingularMatrix);
    }
    Ok(d.powi(-2 * x.order() as i32))
}

/// General (non-Hermitian) branch of the inverse transformation,
/// `|det(X X*)|^(-2p)`. Formula only; no finite-difference verification is
/// wired up for this branch because nothing downstream consumes it.
pub fn inverse_jacobian_general(x: &ComplexMatrix) -> Result<f64> {
    assert!(x.is_square());
    let d = x.mul(&x.adjoint()).abs_det();
    if d == 0.0 {
        return Err(Error::SingularMatrix);
    }
    Ok(d.powi(-2 * x.rows() as i32))
}

// --- coordinate flattening -------------------------------------------------

/// General complex `m x n` matrix to `2mn` reals, row-major, re before im.
pub fn general_coords(x: &ComplexMatrix) -> RealCoordinates {
    let mut v = Vec::with_capacity(2 * x.rows() * x.cols());
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let z = x.at(i, j);
            v.push(z.re);
            v.push(z.im);
        }
    }
    v
}

pub fn general_from_coords(m: usize, n: usize, v: &[f64]) -> ComplexMatrix {
    assert_eq!(v.len(), 2 * m * n);
    ComplexMatrix::from_fn(m, n, |i, j| {
        let k = 2 * (i * n + j);
        Complex64::new(v[k], v[k + 1])
    })
}

/// Hermitian `p x p` matrix to `p^2` reals: the `p` real diagonal entries,
/// then re/im of the strict lower triangle row-major.
pub fn hermitian_coords(x: &HermitianMatrix) -> RealCoordinates {
    let p = x.order();
    let mut v = Vec::with_capacity(p * p);
    for i in 0..p {
        v.push(x.at(i, i).re);
    }
    for i in 1..p {
        for j in 0..i {
            let z = x.at(i, j);
            v.push(z.re);
            v.push(z.im);
        }
    }
    v
}

pub fn hermitian_from_coords(p: usize, v: &[f64]) -> HermitianMatrix {
    assert_eq!(v.len(), p * p);
    let diag = &v[..p];
    let lower: Vec<Complex64> = v[p..]
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    HermitianMatrix::from_lower_parts(diag, &lower).expect("coordinate layout is valid")
}

/// Triangular factor to `p^2` reals: the `p` real diagonal entries, then
/// re/im of the strict lower triangle row-major.
pub fn triangular_coords(t: &LowerTriangular) -> RealCoordinates {
    let p = t.order();
    let mut v = Vec::with_capacity(p * p);
    for i in 0..p {
        v.push(t.diag(i));
    }
    for i in 1..p {
        for j in 0..i {
            let z = t.at(i, j);
            v.push(z.re);
            v.push(z.im);
        }
    }
    v
}

pub fn triangular_from_coords(p: usize, v: &[f64]) -> Result<LowerTriangular> {
    assert_eq!(v.len(), p * p);
    let diag = &v[..p];
    let lower: Vec<Complex64> = v[p..]
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    LowerTriangular::from_parts(diag, &lower)
}

// --- finite-difference verification -----------------------------------------

/// Checks the analytic factor of `transform` at `point` against the absolute
/// determinant of the numerically differentiated coordinate map.
///
/// `h` is the central-difference step and must lie in `[1e-7, 1e-3]`; the base
/// point must be strictly interior to the transform's domain (in particular
/// `T T*` evaluation requires positive diagonal entries throughout the
/// stencil).
pub fn verify_jacobian_fd(
    transform: &MatrixTransform,
    point: &TransformPoint,
    h: f64,
) -> Result<FdCheck> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::domain("step h must lie in [1e-7, 1e-3]"));
    }
    let (coords, analytic, map): (RealCoordinates, f64, MapFn) = match (transform, point) {
        (MatrixTransform::LinearSandwich { a, b, c }, TransformPoint::General(x)) => {
            let (m, n) = (x.rows(), x.cols());
            let (_, jac) = apply_linear(a, b, c, x)?;
            let (a, b, c) = (a.clone(), b.clone(), c.clone());
            let f: MapFn = alloc::boxed::Box::new(move |v: &[f64]| {
                let x = general_from_coords(m, n, v);
                let y = a.mul(&x).mul(&b).add(&c);
                Ok(general_coords(&y))
            });
            (general_coords(x), jac, f)
        }
        (MatrixTransform::HermitianCongruence { a }, TransformPoint::Hermitian(x)) => {
            let p = x.order();
            let (_, jac) = apply_congruence(a, x)?;
            let a = a.clone();
            let f: MapFn = alloc::boxed::Box::new(move |v: &[f64]| {
                let x = hermitian_from_coords(p, v);
                Ok(hermitian_coords(&x.congruence(&a)))
            });
            (hermitian_coords(x), jac, f)
        }
        (MatrixTransform::CholeskyFactor { p }, TransformPoint::Triangular(t)) => {
            assert_eq!(*p, t.order());
            let p = *p;
            let jac = cholesky_jacobian(t);
            let f: MapFn = alloc::boxed::Box::new(move |v: &[f64]| {
                let t = triangular_from_coords(p, v)?;
                Ok(hermitian_coords(&t.reconstruct()))
            });
            (triangular_coords(t), jac, f)
        }
        (MatrixTransform::Inverse { p }, TransformPoint::Hermitian(x)) => {
            assert_eq!(*p, x.order());
            let p = *p;
            let jac = inverse_jacobian(x)?;
            let f: MapFn = alloc::boxed::Box::new(move |v: &[f64]| {
                let x = hermitian_from_coords(p, v);
                Ok(hermitian_coords(&x.inverse()?))
            });
            (hermitian_coords(x), jac, f)
        }
        _ => {
            return Err(Error::domain(
                "base point kind does not match the transform domain",
            ))
        }
    };

    let d = coords.len();
    let mut jac_matrix = vec![0.0f64; d * d];
    let mut work = coords.clone();
    for col in 0..d {
        let x0 = coords[col];
        work[col] = x0 + h;
        let plus = map(&work)?;
        work[col] = x0 - h;
        let minus = map(&work)?;
        work[col] = x0;
        for row in 0..d {
            jac_matrix[row * d + col] = (plus[row] - minus[row]) / (2.0 * h);
        }
    }
    let numeric = real_det_in_place(d, &mut jac_matrix).abs();
    if !numeric.is_finite() || numeric < 1e-280 {
        return Err(Error::DegenerateJacobian);
    }
    Ok(FdCheck {
        analytic,
        numeric,
        rel_err: (analytic - numeric).abs() / analytic,
    })
}

type MapFn = alloc::boxed::Box<dyn Fn(&[f64]) -> Result<RealCoordinates>>;
