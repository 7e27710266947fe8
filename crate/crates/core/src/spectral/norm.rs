use rayon::prelude::*;

use super::TorusGrid;
use crate::matrix::spectral_norm;
use crate::ncpoly::NCLaurentPoly;
use crate::reps::{rep_evaluate, RepPoint};

/// Best value found by the torus search and where it was attained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate {
    pub norm: f64,
    pub phi1: f64,
    pub phi2: f64,
}

/// `max ‖ρ_{z₁,z₂}(a)‖` over the torus, as a lower bound.
pub fn operator_norm(a: &NCLaurentPoly, grid: &TorusGrid, refine_steps: usize) -> f64 {
    operator_norm_estimate(a, grid, refine_steps).norm
}

/// Grid maximum followed by `refine_steps` rounds of coordinatewise
/// golden-section search in the cell around the best lattice point.
///
/// The lattice is evaluated in parallel and reduced in lattice order, so the
/// result does not depend on the worker count.
pub fn operator_norm_estimate(
    a: &NCLaurentPoly,
    grid: &TorusGrid,
    refine_steps: usize,
) -> NormEstimate {
    if a.is_zero() {
        return NormEstimate {
            norm: 0.0,
            phi1: 0.0,
            phi2: 0.0,
        };
    }
    let values: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|i| spectral_norm(&rep_evaluate(a, &grid.point(i))))
        .collect();
    let (best_index, best) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let (phi1, phi2) = grid.angles(best_index);
    let mut est = NormEstimate {
        norm: best,
        phi1,
        phi2,
    };

    let objective = |p1: f64, p2: f64| spectral_norm(&rep_evaluate(a, &RepPoint::from_angles(p1, p2)));
    let (h1, h2) = (grid.step1(), grid.step2());
    for _ in 0..refine_steps {
        let p2 = est.phi2;
        let (x, fx) = golden_max(|x| objective(x, p2), est.phi1 - h1, est.phi1 + h1);
        if fx > est.norm {
            est.norm = fx;
            est.phi1 = x;
        }
        let p1 = est.phi1;
        let (y, fy) = golden_max(|y| objective(p1, y), est.phi2 - h2, est.phi2 + h2);
        if fy > est.norm {
            est.norm = fy;
            est.phi2 = y;
        }
    }
    est.phi1 = est.phi1.rem_euclid(std::f64::consts::TAU);
    est.phi2 = est.phi2.rem_euclid(std::f64::consts::TAU);
    est
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum on `[lo, hi]`; returns the best
/// abscissa seen together with its value.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-11 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
