//! Matrix-valued functions on `[0, q)²` sampled on a lattice, and the
//! topology of the algebra bundle.
//!
//! A q-periodic function `a: R² → M_q` lies in `A_{p/q}` exactly when
//! `a(x₁+1, x₂) = V₀^{-r} a(x) V₀^r` and `a(x₁, x₂+1) = U₀^r a(x) U₀^{-r}`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::matrix::{clock_power, identity, monomial_entries, shift_power, ComplexMatrix};
use crate::ncpoly::{NCLaurentPoly, PRUNE_THRESHOLD};
use crate::params::{root_of_unity, ModularParams};

/// Precondition tolerance for [`fourier_coefficients`].
pub const FOURIER_MEMBERSHIP_TOL: f64 = 1e-8;

/// Values `a(q·i/n, q·j/n)` for `0 <= i, j < n`, stored row-major in `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionGrid {
    params: ModularParams,
    n: usize,
    values: Vec<ComplexMatrix>,
}

impl SectionGrid {
    /// Requires `n >= 4q`, `q | n`, and `n²` matrices of size `q × q`.
    pub fn new(params: ModularParams, n: usize, values: Vec<ComplexMatrix>) -> Result<Self> {
        let q = params.dim();
        if n < 4 * q {
            return Err(Error::ResolutionTooLow { n, min: 4 * q });
        }
        if n % q != 0 {
            return Err(Error::ResolutionNotDivisible { n, q: params.q() });
        }
        if values.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} lattice values, got {}",
                n * n,
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|m| m.shape() != (q, q)) {
            return Err(Error::DimensionMismatch(format!(
                "expected {q}x{q} values, got {:?}",
                bad.shape()
            )));
        }
        Ok(Self { params, n, values })
    }

    /// The same matrix at every lattice point.
    pub fn constant(params: ModularParams, n: usize, value: ComplexMatrix) -> Result<Self> {
        Self::new(params, n, vec![value; n * n])
    }

    pub fn params(&self) -> &ModularParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[ComplexMatrix] {
        &self.values
    }

    /// Value at lattice indices, wrapping periodically.
    pub fn at(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.values[(i % self.n) * self.n + (j % self.n)]
    }

    /// Largest Frobenius distance between corresponding lattice values.
    pub fn max_distance(&self, other: &SectionGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Samples `x ↦ Σ c(m,n) e^{2πi(m x₁ + n x₂)/q} U₀^m V₀^n` on an `n × n` lattice.
pub fn synthesize_section(a: &NCLaurentPoly, n: usize) -> Result<SectionGrid> {
    let params = *a.params();
    let q = params.dim();
    if n < 4 * q {
        return Err(Error::ResolutionTooLow { n, min: 4 * q });
    }
    if n % q != 0 {
        return Err(Error::ResolutionNotDivisible { n, q: params.q() });
    }
    let terms: Vec<_> = a.terms().collect();
    let values = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = ((idx / n) as i64, (idx % n) as i64);
            let mut value = ComplexMatrix::zeros(q, q);
            for &((m, k), c) in &terms {
                // x₁ = q·i/n, so m·x₁/q = m·i/n
                let phase = root_of_unity(m * i + k * j, n as u32);
                for (row, col, entry) in monomial_entries(&params, m, k) {
                    value[(row, col)] += c * phase * entry;
                }
            }
            value
        })
        .collect();
    SectionGrid::new(params, n, values)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipReport {
    pub holds: bool,
    pub max_violation: f64,
}

/// Checks both twisted-equivariance relations at every lattice point.
///
/// The violation is the Frobenius norm of the difference of the two sides.
pub fn check_membership(s: &SectionGrid, tol: f64) -> Result<MembershipReport> {
    let params = s.params;
    let (n, q) = (s.n, params.dim());
    if n % q != 0 {
        return Err(Error::ResolutionNotDivisible { n, q: params.q() });
    }
    let unit = n / q;
    let r = params.r() as i64;
    let v_neg = clock_power(&params, -r);
    let v_pos = clock_power(&params, r);
    let u_pos = shift_power(q, r);
    let u_neg = shift_power(q, -r);
    let max_violation = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let a = s.at(i, j);
            let first = (s.at(i + unit, j) - &v_neg * a * &v_pos).norm();
            let second = (s.at(i, j + unit) - &u_pos * a * &u_neg).norm();
            first.max(second)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max);
    Ok(MembershipReport {
        holds: max_violation <= tol,
        max_violation,
    })
}

/// Coefficients `c(m, n)` with `|m|, |n| <= m_max`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoeffTable {
    pub m_max: usize,
    pub entries: BTreeMap<(i64, i64), Complex64>,
}

impl CoeffTable {
    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        self.entries
            .get(&(m, n))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_poly(&self, params: ModularParams) -> NCLaurentPoly {
        NCLaurentPoly::from_terms(params, self.entries.iter().map(|(k, c)| (*k, *c)))
    }
}

/// Fourier coefficients of a section in the `U^m V^n` expansion.
///
/// For each residue class `(m mod q, n mod q)` the trace
/// `Tr((U₀^m V₀^n)* a(x))` is sampled on the lattice and transformed with a
/// 2-D FFT; `c(m,n)` is the matching frequency scaled by `1/(q n²)`.
pub fn fourier_coefficients(s: &SectionGrid, m_max: usize) -> Result<CoeffTable> {
    let (n, q) = (s.n, s.params.dim());
    if 2 * m_max + 1 > n {
        return Err(Error::AliasingRisk { m_max, n });
    }
    let report = check_membership(s, FOURIER_MEMBERSHIP_TOL)?;
    if !report.holds {
        return Err(Error::MembershipViolation(report.max_violation));
    }
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let scale = 1.0 / (q as f64 * (n * n) as f64);

    let mut entries = BTreeMap::new();
    for j in 0..q {
        for k in 0..q {
            let basis: Vec<_> = monomial_entries(&s.params, j as i64, k as i64).collect();
            let mut grid: Vec<Complex64> = s
                .values
                .iter()
                .map(|a| {
                    basis
                        .iter()
                        .map(|&(row, col, b)| b.conj() * a[(row, col)])
                        .sum()
                })
                .collect();
            fft2(&mut grid, n, fft.as_ref());
            let box_range = -(m_max as i64)..=m_max as i64;
            for m in box_range.clone().filter(|m| m.rem_euclid(q as i64) == j as i64) {
                for l in box_range.clone().filter(|l| l.rem_euclid(q as i64) == k as i64) {
                    let fm = m.rem_euclid(n as i64) as usize;
                    let fl = l.rem_euclid(n as i64) as usize;
                    let c = grid[fm * n + fl] * scale;
                    if c.norm() >= PRUNE_THRESHOLD {
                        entries.insert((m, l), c);
                    }
                }
            }
        }
    }
    Ok(CoeffTable { m_max, entries })
}

/// In-place forward 2-D DFT of a row-major `n × n` array.
fn fft2(data: &mut [Complex64], n: usize, fft: &dyn rustfft::Fft<f64>) {
    for row in data.chunks_mut(n) {
        fft.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..n {
        for r in 0..n {
            column[r] = data[r * n + c];
        }
        fft.process(&mut column);
        for r in 0..n {
            data[r * n + c] = column[r];
        }
    }
}

/// `G(z) = diag(1, …, 1, z) U₀`.
pub fn clutching_matrix(params: &ModularParams, z: Complex64) -> ComplexMatrix {
    let q = params.dim();
    let mut diag = identity(q);
    diag[(q - 1, q - 1)] = z;
    diag * shift_power(q, 1)
}

/// Winding number of `z ↦ det G(z)^r` around the unit circle, from the
/// accumulated phase increments over `samples` equally spaced points.
pub fn clutching_winding(params: &ModularParams, samples: usize) -> Result<i64> {
    let q = params.dim();
    let r = params.r() as usize;
    let min = 16 * q * r;
    if samples < min {
        return Err(Error::InsufficientSamples { got: samples, min });
    }
    let dets: Vec<Complex64> = (0..=samples)
        .map(|k| {
            let z = root_of_unity(k as i64, samples as u32);
            clutching_matrix(params, z).pow(r as u32).determinant()
        })
        .collect();
    let mut total = 0.0;
    for pair in dets.windows(2) {
        let step = (pair[1] / pair[0]).arg();
        if step.abs() >= std::f64::consts::PI {
            return Err(Error::PhaseJumpTooLarge(step.abs()));
        }
        total += step;
    }
    Ok((total / std::f64::consts::TAU).round() as i64)
}

/// `A_{p/q} ≅ A_{p2/q2}` iff `q2 = q` and `p2 ∈ {p, q − p}`.
pub fn classify_isomorphic(p: i64, q: i64, p2: i64, q2: i64) -> Result<bool> {
    let a = ModularParams::new(p, q)?;
    let b = ModularParams::new(p2, q2)?;
    Ok(a.q() == b.q() && (b.p() == a.p() || b.p() == a.q() - a.p()))
}
