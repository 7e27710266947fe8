use std::io::Write;

use rayon::prelude::*;

use super::TorusGrid;
use crate::error::{Error, Result};
use crate::format::sig17;
use crate::linalg::hermitian_eigenvalues;
use crate::ncpoly::NCLaurentPoly;
use crate::params::{coprime_pairs, ModularParams};
use crate::reps::rep_evaluate;

const SELFADJOINT_TOL: f64 = 1e-10;

/// Disjoint closed intervals, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct BandSpectrum {
    pub intervals: Vec<(f64, f64)>,
}

impl BandSpectrum {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.intervals.first().map_or(f64::NAN, |b| b.0)
    }

    pub fn max(&self) -> f64 {
        self.intervals.last().map_or(f64::NAN, |b| b.1)
    }
}

/// Union over the grid of the eigenvalues of `ρ(a)`.
///
/// The k-th smallest eigenvalue sweeps one interval as the point moves over
/// the torus; these q intervals are merged wherever they overlap or sit
/// within `merge_tol` of each other. `None` selects `1e-6 ×` the spectral
/// diameter.
pub fn spectrum_selfadjoint(
    a: &NCLaurentPoly,
    grid: &TorusGrid,
    merge_tol: Option<f64>,
) -> Result<BandSpectrum> {
    let defect = a.selfadjoint_defect();
    if defect > SELFADJOINT_TOL {
        return Err(Error::NotSelfAdjoint(defect));
    }
    let q = a.params().dim();
    let samples: Vec<Vec<f64>> = (0..grid.len())
        .into_par_iter()
        .map(|i| hermitian_eigenvalues(&rep_evaluate(a, &grid.point(i))))
        .collect();
    let mut bands = vec![(f64::INFINITY, f64::NEG_INFINITY); q];
    for eig in &samples {
        for (band, &e) in bands.iter_mut().zip(eig) {
            band.0 = band.0.min(e);
            band.1 = band.1.max(e);
        }
    }
    bands.sort_by(|x, y| x.0.total_cmp(&y.0));
    let diameter = bands.iter().map(|b| b.1).fold(f64::NEG_INFINITY, f64::max)
        - bands[0].0;
    let tol = merge_tol.unwrap_or(1e-6 * diameter);
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(q);
    for (lo, hi) in bands {
        match merged.last_mut() {
            Some(last) if lo <= last.1 + tol => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    Ok(BandSpectrum { intervals: merged })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ButterflyRow {
    pub p: u32,
    pub q: u32,
    pub theta: f64,
    pub band_lo: f64,
    pub band_hi: f64,
}

pub const BUTTERFLY_HEADER: &str = "p,q,theta,band_lo,band_hi";

/// Band spectra of `expr` for every coprime `(p, q)` with `2 <= q <= q_max`.
///
/// Rows are ordered by `q`, then `p`, then band position.
pub fn butterfly(q_max: u32, expr: &str, grid: &TorusGrid) -> Result<Vec<ButterflyRow>> {
    if q_max > 50 {
        return Err(Error::QMaxTooLarge(q_max));
    }
    let pairs = coprime_pairs(q_max);
    if pairs.is_empty() {
        return Err(Error::EmptyDomain(q_max));
    }
    let tree = crate::ncpoly::parse_expr(expr)?;
    let spectra: Vec<Result<Vec<ButterflyRow>>> = pairs
        .par_iter()
        .map(|&(p, q)| {
            let params = ModularParams::new(p as i64, q as i64)?;
            let element = NCLaurentPoly::from_expr(&tree, params).map_err(|e| Error::at(p, q, e))?;
            let spectrum =
                spectrum_selfadjoint(&element, grid, None).map_err(|e| Error::at(p, q, e))?;
            Ok(spectrum
                .intervals
                .into_iter()
                .map(|(lo, hi)| ButterflyRow {
                    p,
                    q,
                    theta: params.theta(),
                    band_lo: lo,
                    band_hi: hi,
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for block in spectra {
        rows.extend(block?);
    }
    Ok(rows)
}

pub fn write_butterfly_csv(rows: &[ButterflyRow], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{BUTTERFLY_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.p,
            row.q,
            sig17(row.theta),
            sig17(row.band_lo),
            sig17(row.band_hi)
        )?;
    }
    Ok(())
}
