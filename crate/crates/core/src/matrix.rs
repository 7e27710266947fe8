//! The matrix algebra `M_q`: clock and shift generators, the Hilbert–Schmidt
//! inner product, and expansion in the `U₀^j V₀^k` basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::params::ModularParams;

pub type ComplexMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// `U₀`: row `j` has a single 1 in column `j + 1 mod q`.
pub fn shift_matrix(params: &ModularParams) -> ComplexMatrix {
    shift_power(params.dim(), 1)
}

/// `V₀ = diag(1, ω, …, ω^{q-1})`.
pub fn clock_matrix(params: &ModularParams) -> ComplexMatrix {
    clock_power(params, 1)
}

/// `U₀^j`, with `j` reduced mod `q`.
pub fn shift_power(q: usize, j: i64) -> ComplexMatrix {
    let j = j.rem_euclid(q as i64) as usize;
    DMatrix::from_fn(q, q, |row, col| if col == (row + j) % q { ONE } else { ZERO })
}

/// `V₀^k = diag(ω^{ik})`.
pub fn clock_power(params: &ModularParams, k: i64) -> ComplexMatrix {
    let q = params.dim();
    let diag = (0..q).map(|i| params.omega_pow(i as i64 * k));
    ComplexMatrix::from_diagonal(&nalgebra::DVector::from_iterator(q, diag))
}

/// `U₀^j V₀^k`, whose only nonzero entries are `(i, i+j) ↦ ω^{(i+j)k}`.
pub fn monomial_matrix(params: &ModularParams, j: i64, k: i64) -> ComplexMatrix {
    let q = params.dim();
    let mut m = ComplexMatrix::zeros(q, q);
    for (row, col, value) in monomial_entries(params, j, k) {
        m[(row, col)] = value;
    }
    m
}

/// Nonzero entries `(row, col, value)` of `U₀^j V₀^k`.
pub fn monomial_entries(
    params: &ModularParams,
    j: i64,
    k: i64,
) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
    let q = params.dim();
    let shift = j.rem_euclid(q as i64) as usize;
    (0..q).map(move |row| {
        let col = (row + shift) % q;
        (row, col, params.omega_pow(col as i64 * k))
    })
}

fn check_same_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "{:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

/// Hilbert–Schmidt inner product `⟨a, b⟩ = Tr(b* a)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    check_same_dims(a, b)?;
    Ok(a.iter().zip(b.iter()).map(|(x, y)| y.conj() * x).sum())
}

/// Coefficients `d(j, k) = ⟨M, U₀^j V₀^k⟩ / q` for `0 <= j, k < q`, stored
/// with `j` as the row index.
pub fn basis_expand(m: &ComplexMatrix, params: &ModularParams) -> Result<ComplexMatrix> {
    let q = params.dim();
    if m.shape() != (q, q) {
        return Err(Error::DimensionMismatch(format!(
            "expected {q}x{q}, got {:?}",
            m.shape()
        )));
    }
    let scale = 1.0 / q as f64;
    Ok(DMatrix::from_fn(q, q, |j, k| {
        let inner: Complex64 = monomial_entries(params, j as i64, k as i64)
            .map(|(row, col, value)| value.conj() * m[(row, col)])
            .sum();
        inner * scale
    }))
}

/// Inverse of [`basis_expand`]: `Σ d(j,k) U₀^j V₀^k`.
pub fn basis_reconstruct(table: &ComplexMatrix, params: &ModularParams) -> ComplexMatrix {
    let q = params.dim();
    let mut m = ComplexMatrix::zeros(q, q);
    for j in 0..q {
        for k in 0..q {
            let d = table[(j, k)];
            for (row, col, value) in monomial_entries(params, j as i64, k as i64) {
                m[(row, col)] += d * value;
            }
        }
    }
    m
}

/// Gram matrix of `{U₀^j V₀^k}` under [`hs_inner`], indexed by `j·q + k`.
///
/// Each basis matrix has exactly one nonzero per row, so every inner product
/// is a sum over `q` rows instead of `q²` entries.
pub fn gram_matrix(params: &ModularParams) -> ComplexMatrix {
    let q = params.dim();
    let rows: Vec<Vec<(usize, Complex64)>> = (0..q * q)
        .map(|idx| {
            monomial_entries(params, (idx / q) as i64, (idx % q) as i64)
                .map(|(_, col, value)| (col, value))
                .collect()
        })
        .collect();
    DMatrix::from_fn(q * q, q * q, |a, b| {
        rows[a]
            .iter()
            .zip(&rows[b])
            .filter(|(x, y)| x.0 == y.0)
            .map(|(x, y)| y.1.conj() * x.1)
            .sum()
    })
}

/// Operator norm: square root of the largest eigenvalue of `M*M`.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let top = linalg::hermitian_eigenvalues(&gram)
        .last()
        .copied()
        .unwrap_or(0.0);
    top.max(0.0).sqrt()
}

/// `‖M*M − I‖_F`.
pub fn unitarity_defect(m: &ComplexMatrix) -> f64 {
    (m.adjoint() * m - identity(m.nrows())).norm()
}

/// Largest entry modulus of `M − M*`.
pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
