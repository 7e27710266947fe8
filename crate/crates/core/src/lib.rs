//! Computations in the rational rotation algebras `A_{p/q}`.
//!
//! The algebra is generated by two unitaries `U`, `V` with `UV = ωVU`,
//! `ω = exp(2πi p/q)`. Every irreducible representation is q-dimensional and
//! sends `U ↦ z₁U₀`, `V ↦ z₂V₀` for a point `(z₁, z₂)` on the torus, where
//! `U₀` is the cyclic shift and `V₀` the clock matrix. Norms and spectra of
//! algebra elements are therefore computed by sweeping that torus.
//!
//! Module map:
//! - [`params`], [`matrix`]: modular arithmetic, clock/shift matrices and the
//!   Hilbert–Schmidt structure of `M_q`.
//! - [`ncpoly`]: expression parsing and the `U^m V^n` normal form.
//! - [`reps`]: evaluation through irreducible representations, equivalence
//!   of representation points, commutant dimension.
//! - [`spectral`]: operator norms, band spectra, butterfly data, spectral
//!   families of unitary matrices.
//! - [`bundle`]: sampled sections, twisted equivariance, Fourier
//!   coefficients, clutching winding, isomorphism classification.

pub mod bundle;
pub mod error;
pub mod format;
pub mod linalg;
pub mod matrix;
pub mod ncpoly;
pub mod params;
pub mod reps;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use ncpoly::NCLaurentPoly;
pub use params::ModularParams;
pub use reps::RepPoint;

pub use num_complex::Complex64;
