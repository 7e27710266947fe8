//! Dense eigen- and singular-value routines.
//!
//! Storage and arithmetic use `nalgebra`; the decompositions are delegated to
//! `faer`, whose complex QR iteration handles permutation-like inputs such as
//! the shift matrix.

use faer::complex_native::c64;
use faer::{Mat, Side};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

fn to_faer(m: &ComplexMatrix) -> Mat<c64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m[(i, j)];
        c64::new(z.re, z.im)
    })
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is read.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut vals = to_faer(m).selfadjoint_eigenvalues(Side::Lower);
    vals.sort_by(f64::total_cmp);
    vals
}

/// Eigenvalues and unit eigenvectors (as columns) of a square complex matrix.
pub fn eigen(m: &ComplexMatrix) -> (Vec<Complex64>, ComplexMatrix) {
    let n = m.nrows();
    let evd = to_faer(m).eigendecomposition::<c64>();
    let s = evd.s().column_vector();
    let u = evd.u();
    let values = (0..n)
        .map(|i| {
            let z = s.read(i);
            Complex64::new(z.re, z.im)
        })
        .collect();
    let mut vectors = DMatrix::from_fn(n, n, |i, j| {
        let z = u.read(i, j);
        Complex64::new(z.re, z.im)
    });
    for mut col in vectors.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= Complex64::new(norm, 0.0);
        }
    }
    (values, vectors)
}

/// Singular values of a real matrix, in no particular order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let f = Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    f.singular_values()
}
