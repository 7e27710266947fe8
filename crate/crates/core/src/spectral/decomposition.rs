//! Spectral families `E_φ` of unitary matrices, with eigenphases in `(0, 2π]`
//! and `E_0 = 0`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{identity, unitarity_defect, ComplexMatrix};

/// Eigenvalues closer than this (on the unit circle) form one cluster.
const CLUSTER_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SpectralFamily {
    /// Distinct eigenphases, ascending in `(0, 2π]`.
    pub phases: Vec<f64>,
    /// Orthogonal projection onto the eigenspace of each phase.
    pub projections: Vec<ComplexMatrix>,
}

impl SpectralFamily {
    pub fn dim(&self) -> usize {
        self.projections.first().map_or(0, |p| p.nrows())
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.phases
            .iter()
            .map(|&phi| Complex64::from_polar(1.0, phi))
            .collect()
    }

    /// `E_φ`: sum of the projections whose phase is `<= φ`.
    pub fn cumulative(&self, phi: f64) -> ComplexMatrix {
        let n = self.dim();
        self.phases
            .iter()
            .zip(&self.projections)
            .filter(|(&ph, _)| ph <= phi)
            .fold(ComplexMatrix::zeros(n, n), |acc, (_, p)| acc + p)
    }

    /// `Σ e^{iφ_k} P_k`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        self.phases
            .iter()
            .zip(&self.projections)
            .fold(ComplexMatrix::zeros(n, n), |acc, (&ph, p)| {
                acc + p * Complex64::from_polar(1.0, ph)
            })
    }

    /// `Σ e^{iψ_k} (E_{ψ_k} − E_{ψ_{k−1}})` for a partition
    /// `0 = ψ_0 < ψ_1 < … < ψ_n = 2π`, tagging each cell by its right end.
    pub fn riemann_stieltjes_sum(&self, partition: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        let mut sum = ComplexMatrix::zeros(n, n);
        let mut prev = self.cumulative(partition[0]);
        for &psi in &partition[1..] {
            let next = self.cumulative(psi);
            sum += (&next - &prev) * Complex64::from_polar(1.0, psi);
            prev = next;
        }
        sum
    }
}

fn phase_of(z: Complex64) -> f64 {
    if (z - 1.0).norm() <= CLUSTER_TOL {
        return TAU;
    }
    let phi = z.im.atan2(z.re);
    if phi <= 0.0 {
        phi + TAU
    } else {
        phi
    }
}

/// Spectral family of a unitary matrix.
pub fn spectral_decomposition(m: &ComplexMatrix, tol: f64) -> Result<SpectralFamily> {
    if m.nrows() != m.ncols() || m.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "expected a nonempty square matrix, got {:?}",
            m.shape()
        )));
    }
    let defect = unitarity_defect(m);
    if !(defect <= tol) {
        return Err(Error::NotUnitary(defect));
    }
    let n = m.nrows();
    let (values, vectors) = linalg::eigen(m);

    // Greedy clustering in order of phase; the cut at 2π is handled by
    // phase_of sending values near 1 to 2π.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| phase_of(values[a]).total_cmp(&phase_of(values[b])));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match clusters.last_mut() {
            Some(c) if (values[c[0]] - values[idx]).norm() <= CLUSTER_TOL => c.push(idx),
            _ => clusters.push(vec![idx]),
        }
    }
    if clusters.len() > 1 {
        let (first, last) = (clusters[0][0], clusters[clusters.len() - 1][0]);
        if (values[first] - values[last]).norm() <= CLUSTER_TOL {
            let head = clusters.remove(0);
            clusters.last_mut().unwrap().extend(head);
        }
    }

    let mut phases = Vec::with_capacity(clusters.len());
    let mut projections = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let mean: Complex64 = cluster.iter().map(|&i| values[i]).sum::<Complex64>()
            / cluster.len() as f64;
        phases.push(phase_of(mean / mean.norm()));
        let block = vectors.select_columns(&cluster);
        let basis = nalgebra::linalg::QR::new(block).q();
        projections.push(&basis * basis.adjoint());
    }
    Ok(SpectralFamily {
        phases,
        projections,
    })
}

/// Laurent polynomial `Σ c_j u^j`, `j` from `lowest_power` upward.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentCoefficients {
    pub lowest_power: i64,
    pub coeffs: Vec<Complex64>,
}

impl LaurentCoefficients {
    pub fn highest_power(&self) -> i64 {
        self.lowest_power + self.coeffs.len() as i64 - 1
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        let horner = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c);
        horner * u.powi(self.lowest_power as i32)
    }

    /// `p(M)` for unitary `M`, taking `M^{-1} = M*`.
    pub fn eval_unitary(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let n = m.nrows();
        let mut acc = ComplexMatrix::zeros(n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc * m + identity(n) * c;
        }
        let shift = if self.lowest_power < 0 {
            m.adjoint().pow((-self.lowest_power) as u32)
        } else {
            m.pow(self.lowest_power as u32)
        };
        acc * shift
    }
}

/// Interpolating Laurent polynomial `p` with `p(λ_j) = δ_{jk}` on the
/// distinct eigenvalues, so that `p(M) = P_k`.
///
/// The lowest power is `−⌊(d−1)/2⌋` for `d` distinct eigenvalues, which keeps
/// the exponents balanced around zero.
pub fn projection_as_polynomial(
    m: &ComplexMatrix,
    family: &SpectralFamily,
    k: usize,
) -> Result<LaurentCoefficients> {
    let d = family.phases.len();
    if k >= d {
        return Err(Error::IndexOutOfRange { index: k, len: d });
    }
    if m.nrows() != family.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, family acts on dimension {}",
            m.nrows(),
            m.ncols(),
            family.dim()
        )));
    }
    let nodes = family.eigenvalues();
    let target = nodes[k];
    // L_k(u) = Π_{j≠k} (u − λ_j)/(λ_k − λ_j), ascending coefficients
    let mut lagrange = vec![Complex64::new(1.0, 0.0)];
    for (j, &node) in nodes.iter().enumerate() {
        if j == k {
            continue;
        }
        let denom = target - node;
        let mut next = vec![Complex64::new(0.0, 0.0); lagrange.len() + 1];
        for (i, &c) in lagrange.iter().enumerate() {
            next[i + 1] += c / denom;
            next[i] -= c * node / denom;
        }
        lagrange = next;
    }
    let shift = ((d - 1) / 2) as i64;
    let scale = target.powi(shift as i32);
    Ok(LaurentCoefficients {
        lowest_power: -shift,
        coeffs: lagrange.into_iter().map(|c| c * scale).collect(),
    })
}
