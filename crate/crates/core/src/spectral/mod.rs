//! Norms and spectra over the representation torus, plus spectral families
//! of unitary matrices.

mod bands;
mod decomposition;
mod norm;

pub use bands::{
    butterfly, spectrum_selfadjoint, write_butterfly_csv, BandSpectrum, ButterflyRow,
    BUTTERFLY_HEADER,
};
pub use decomposition::{
    projection_as_polynomial, spectral_decomposition, LaurentCoefficients, SpectralFamily,
};
pub use norm::{operator_norm, operator_norm_estimate, NormEstimate};

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::reps::RepPoint;

/// Uniform `n1 × n2` lattice `(e^{2πi a/n1}, e^{2πi b/n2})` on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusGrid {
    n1: usize,
    n2: usize,
}

impl TorusGrid {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 < 4 || n2 < 4 {
            return Err(Error::InvalidGrid { n1, n2 });
        }
        Ok(Self { n1, n2 })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step1(&self) -> f64 {
        TAU / self.n1 as f64
    }

    pub fn step2(&self) -> f64 {
        TAU / self.n2 as f64
    }

    /// Angles of lattice point `index` (row-major, `a` major).
    pub fn angles(&self, index: usize) -> (f64, f64) {
        let (a, b) = (index / self.n2, index % self.n2);
        (
            TAU * a as f64 / self.n1 as f64,
            TAU * b as f64 / self.n2 as f64,
        )
    }

    pub fn point(&self, index: usize) -> RepPoint {
        let (a, b) = (index / self.n2, index % self.n2);
        RepPoint::new(
            crate::params::root_of_unity(a as i64, self.n1 as u32),
            crate::params::root_of_unity(b as i64, self.n2 as u32),
        )
        .expect("roots of unity lie on the circle")
    }
}

impl Default for TorusGrid {
    fn default() -> Self {
        Self { n1: 64, n2: 64 }
    }
}

pub const DEFAULT_REFINE_STEPS: usize = 3;
