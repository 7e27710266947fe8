//! Irreducible representations `ρ_{z₁,z₂}: U ↦ z₁U₀, V ↦ z₂V₀`.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{monomial_entries, ComplexMatrix};
use crate::ncpoly::NCLaurentPoly;
use crate::params::ModularParams;

const UNIT_TOL: f64 = 1e-12;

/// A point `(z₁, z₂)` of the unit torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepPoint {
    z1: Complex64,
    z2: Complex64,
}

impl RepPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self> {
        for z in [z1, z2] {
            if !((z.norm() - 1.0).abs() <= UNIT_TOL) {
                return Err(Error::InvalidPoint(format!("|{z}| is not 1")));
            }
        }
        Ok(Self { z1, z2 })
    }

    /// `(e^{iφ₁}, e^{iφ₂})`.
    pub fn from_angles(phi1: f64, phi2: f64) -> Self {
        Self {
            z1: Complex64::from_polar(1.0, phi1),
            z2: Complex64::from_polar(1.0, phi2),
        }
    }

    pub fn identity() -> Self {
        Self::from_angles(0.0, 0.0)
    }

    pub fn z1(&self) -> Complex64 {
        self.z1
    }

    pub fn z2(&self) -> Complex64 {
        self.z2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    U,
    V,
}

/// `ρ_{z₁,z₂}(a) = Σ c(m,n) z₁^m z₂^n U₀^m V₀^n`.
pub fn rep_evaluate(a: &NCLaurentPoly, pt: &RepPoint) -> ComplexMatrix {
    let params = a.params();
    let q = params.dim();
    let mut out = ComplexMatrix::zeros(q, q);
    for ((m, n), c) in a.terms() {
        let weight = c * pt.z1.powi(m as i32) * pt.z2.powi(n as i32);
        for (row, col, value) in monomial_entries(params, m, n) {
            out[(row, col)] += weight * value;
        }
    }
    out
}

/// `ρ_A ≅ ρ_B` iff `(z₁'/z₁)^q = (z₂'/z₂)^q = 1`, each tested to `tol`.
pub fn reps_equivalent(a: &RepPoint, b: &RepPoint, q: u32, tol: f64) -> bool {
    let close = |za: Complex64, zb: Complex64| {
        let ratio = zb / za;
        (ratio.powi(q as i32) - 1.0).norm() <= tol
    };
    close(a.z1, b.z1) && close(a.z2, b.z2)
}

/// Eigenvalues of `ρ(U)` or `ρ(V)`, obtained by diagonalizing the image and
/// returned sorted by angle in `[0, 2π)`.
pub fn eigenvalue_signature(
    generator: Generator,
    pt: &RepPoint,
    params: &ModularParams,
) -> Vec<Complex64> {
    let element = match generator {
        Generator::U => NCLaurentPoly::u(*params),
        Generator::V => NCLaurentPoly::v(*params),
    };
    let (mut values, _) = linalg::eigen(&rep_evaluate(&element, pt));
    sort_by_angle(&mut values);
    values
}

/// The closed form `{z·ω^j : 0 <= j < q}` of [`eigenvalue_signature`].
pub fn signature_formula(
    generator: Generator,
    pt: &RepPoint,
    params: &ModularParams,
) -> Vec<Complex64> {
    let z = match generator {
        Generator::U => pt.z1,
        Generator::V => pt.z2,
    };
    let mut values: Vec<_> = (0..params.q() as i64)
        .map(|j| z * params.omega_pow(j))
        .collect();
    sort_by_angle(&mut values);
    values
}

fn angle(z: &Complex64) -> f64 {
    z.im.atan2(z.re).rem_euclid(TAU)
}

pub fn sort_by_angle(values: &mut [Complex64]) {
    values.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
}

/// Multiset equality of two angle-sorted unit-circle lists.
///
/// Values near the 2π cut can sort to opposite ends of the two lists, so
/// every cyclic rotation of `b` is tried against `a`.
pub fn signatures_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    (0..n).any(|shift| (0..n).all(|i| (a[i] - b[(i + shift) % n]).norm() <= tol))
}

/// Dimension of `{X : XA = AX for all A in mats}`.
///
/// The map `X ↦ (XA − AX)_A` is realified to a real matrix on `2n²`
/// unknowns; singular values at or below `tol · σ_max` count toward the
/// nullity, and the complex dimension is half the real nullity.
pub fn commutant_dimension(mats: &[ComplexMatrix], tol: f64) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Err(Error::DimensionMismatch("empty family".into()));
    };
    let n = first.nrows();
    if let Some(bad) = mats.iter().find(|m| m.shape() != (n, n)) {
        return Err(Error::DimensionMismatch(format!(
            "expected {n}x{n}, got {:?}",
            bad.shape()
        )));
    }
    let unknowns = n * n;
    let mut real = DMatrix::<f64>::zeros(2 * unknowns * mats.len(), 2 * unknowns);
    // Column for basis element E_{kl} (complex coordinate kl); the image
    // E_{kl}A − AE_{kl} has entries (k, j) += A[l, j] and (i, l) -= A[i, k].
    for (block, a) in mats.iter().enumerate() {
        let row0 = 2 * unknowns * block;
        for k in 0..n {
            for l in 0..n {
                let col = k * n + l;
                let mut image = ComplexMatrix::zeros(n, n);
                for j in 0..n {
                    image[(k, j)] += a[(l, j)];
                }
                for i in 0..n {
                    image[(i, l)] -= a[(i, k)];
                }
                for i in 0..n {
                    for j in 0..n {
                        let z = image[(i, j)];
                        let r = row0 + 2 * (i * n + j);
                        // real-linear action on Re and Im parts of X_{kl}
                        real[(r, 2 * col)] = z.re;
                        real[(r + 1, 2 * col)] = z.im;
                        real[(r, 2 * col + 1)] = -z.im;
                        real[(r + 1, 2 * col + 1)] = z.re;
                    }
                }
            }
        }
    }
    let sv = linalg::singular_values(&real);
    let top = sv.iter().copied().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > tol * top).count();
    Ok((2 * unknowns - rank) / 2)
}
