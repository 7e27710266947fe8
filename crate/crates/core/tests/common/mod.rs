#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rand::SeedableRng;
use std::f64::consts::TAU;

use rotalg::matrix::{clock_matrix, identity, shift_matrix};
use rotalg::ncpoly::Expr;
use rotalg::params::{gcd, ModularParams};
use rotalg::{Complex64, ComplexMatrix, NCLaurentPoly, RepPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn params(p: i64, q: i64) -> ModularParams {
    ModularParams::new(p, q).unwrap()
}

pub fn random_params(rng: &mut impl Rng, q: i64) -> ModularParams {
    loop {
        let p = rng.gen_range(1..q);
        if gcd(p, q) == 1 {
            return params(p, q);
        }
    }
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Up to `max_support` terms with exponents in `[-max_exp, max_exp]`.
pub fn random_poly(
    rng: &mut impl Rng,
    params: ModularParams,
    max_support: usize,
    max_exp: i64,
) -> NCLaurentPoly {
    let support = rng.gen_range(1..=max_support);
    let terms: Vec<_> = (0..support)
        .map(|_| {
            let m = rng.gen_range(-max_exp..=max_exp);
            let n = rng.gen_range(-max_exp..=max_exp);
            ((m, n), random_complex(rng))
        })
        .collect();
    NCLaurentPoly::from_terms(params, terms)
}

pub fn random_point(rng: &mut impl Rng) -> RepPoint {
    RepPoint::from_angles(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU))
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` divided out.
pub fn haar_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let qr = random_matrix(rng, n).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut out = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = d / d.norm();
        for i in 0..n {
            out[(i, j)] *= phase;
        }
    }
    out
}

/// `X^k` for a unitary `X`, negative powers through the adjoint.
pub fn unitary_pow(x: &ComplexMatrix, k: i64) -> ComplexMatrix {
    if k >= 0 {
        x.pow(k as u32)
    } else {
        x.adjoint().pow((-k) as u32)
    }
}

/// Independent evaluation `Σ c (z₁U₀)^m (z₂V₀)^n` by matrix powers.
pub fn direct_eval(a: &NCLaurentPoly, pt: &RepPoint) -> ComplexMatrix {
    let params = a.params();
    let u = shift_matrix(params) * pt.z1();
    let v = clock_matrix(params) * pt.z2();
    let q = params.dim();
    a.terms()
        .fold(ComplexMatrix::zeros(q, q), |acc, ((m, n), c)| {
            acc + unitary_pow(&u, m) * unitary_pow(&v, n) * c
        })
}

/// Evaluates an expression tree directly on matrices, bypassing the normal form.
pub fn eval_ast(expr: &Expr, params: &ModularParams, pt: &RepPoint) -> ComplexMatrix {
    let q = params.dim();
    match expr {
        Expr::U => shift_matrix(params) * pt.z1(),
        Expr::V => clock_matrix(params) * pt.z2(),
        Expr::Scalar(c) => identity(q) * *c,
        Expr::Neg(a) => -eval_ast(a, params, pt),
        Expr::Add(a, b) => eval_ast(a, params, pt) + eval_ast(b, params, pt),
        Expr::Sub(a, b) => eval_ast(a, params, pt) - eval_ast(b, params, pt),
        Expr::Mul(a, b) => eval_ast(a, params, pt) * eval_ast(b, params, pt),
        Expr::Pow(a, k) => {
            let base = eval_ast(a, params, pt);
            if *k >= 0 {
                base.pow(*k as u32)
            } else {
                base.try_inverse().expect("invertible base").pow((-k) as u32)
            }
        }
        Expr::Adjoint(a) => eval_ast(a, params, pt).adjoint(),
    }
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
