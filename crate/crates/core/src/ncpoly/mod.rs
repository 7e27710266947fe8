//! Noncommutative Laurent polynomials in normal form `Σ c(m,n) U^m V^n`.
//!
//! Normal form keeps every `U` power to the left of the `V` power. Products
//! are reordered with `V^n U^m = ω^{-nm} U^m V^n`.

mod parser;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

pub use parser::{parse_expr, Expr};

use crate::error::{Error, Result};
use crate::params::ModularParams;

/// Coefficients with modulus below this are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

#[derive(Clone, Debug, PartialEq)]
pub struct NCLaurentPoly {
    params: ModularParams,
    coeffs: BTreeMap<(i64, i64), Complex64>,
}

impl NCLaurentPoly {
    pub fn zero(params: ModularParams) -> Self {
        Self {
            params,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(params: ModularParams, c: Complex64) -> Self {
        Self::monomial(params, 0, 0, c)
    }

    pub fn one(params: ModularParams) -> Self {
        Self::scalar(params, Complex64::new(1.0, 0.0))
    }

    /// `c · U^m V^n`.
    pub fn monomial(params: ModularParams, m: i64, n: i64, c: Complex64) -> Self {
        Self::from_terms(params, [((m, n), c)])
    }

    pub fn u(params: ModularParams) -> Self {
        Self::monomial(params, 1, 0, Complex64::new(1.0, 0.0))
    }

    pub fn v(params: ModularParams) -> Self {
        Self::monomial(params, 0, 1, Complex64::new(1.0, 0.0))
    }

    /// The Harper element `U + U* + V + V*`.
    pub fn harper(params: ModularParams) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::from_terms(
            params,
            [((1, 0), one), ((-1, 0), one), ((0, 1), one), ((0, -1), one)],
        )
    }

    /// Sums repeated keys and prunes negligible coefficients.
    pub fn from_terms(
        params: ModularParams,
        terms: impl IntoIterator<Item = ((i64, i64), Complex64)>,
    ) -> Self {
        let mut coeffs = BTreeMap::new();
        for (key, c) in terms {
            *coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut poly = Self { params, coeffs };
        poly.prune();
        poly
    }

    /// Parses an expression and reduces it to normal form.
    pub fn parse(src: &str, params: ModularParams) -> Result<Self> {
        Self::from_expr(&parse_expr(src)?, params)
    }

    pub fn from_expr(expr: &Expr, params: ModularParams) -> Result<Self> {
        // Scalar subtrees are folded first so a literal such as (a-bi) keeps
        // a component that would be pruned on its own.
        if let Some(c) = expr.constant_value() {
            return Ok(Self::scalar(params, c));
        }
        Ok(match expr {
            Expr::U => Self::u(params),
            Expr::V => Self::v(params),
            Expr::Scalar(c) => Self::scalar(params, *c),
            Expr::Neg(a) => Self::from_expr(a, params)?.scale(Complex64::new(-1.0, 0.0)),
            Expr::Add(a, b) => Self::from_expr(a, params)?.add(&Self::from_expr(b, params)?)?,
            Expr::Sub(a, b) => Self::from_expr(a, params)?.sub(&Self::from_expr(b, params)?)?,
            Expr::Mul(a, b) => {
                Self::from_expr(a, params)?.multiply(&Self::from_expr(b, params)?)?
            }
            Expr::Pow(a, k) => Self::from_expr(a, params)?.pow(*k)?,
            Expr::Adjoint(a) => Self::from_expr(a, params)?.adjoint(),
        })
    }

    pub fn params(&self) -> &ModularParams {
        &self.params
    }

    pub fn coeff(&self, m: i64, n: i64) -> Complex64 {
        self.coeffs
            .get(&(m, n))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Terms in lexicographic `(m, n)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    pub fn coeffs(&self) -> &BTreeMap<(i64, i64), Complex64> {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ |c(m,n)|`, an upper bound for the operator norm.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch(
                self.params.to_string(),
                other.params.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        Ok(Self::from_terms(
            self.params,
            self.terms().chain(other.terms()),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_terms(self.params, self.terms().map(|(k, c)| (k, c * factor)))
    }

    /// Bilinear extension of `(U^m V^n)(U^m' V^n') = ω^{-n m'} U^{m+m'} V^{n+n'}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let params = self.params;
        let terms = self.terms().flat_map(|((m, n), c)| {
            other.terms().map(move |((m2, n2), c2)| {
                let phase = params.omega_pow(-n * m2);
                ((m + m2, n + n2), c * c2 * phase)
            })
        });
        Ok(Self::from_terms(params, terms.collect::<Vec<_>>()))
    }

    /// `(c U^m V^n)* = conj(c) ω^{-mn} U^{-m} V^{-n}`.
    pub fn adjoint(&self) -> Self {
        let params = self.params;
        Self::from_terms(
            params,
            self.terms()
                .map(|((m, n), c)| ((-m, -n), c.conj() * params.omega_pow(-m * n))),
        )
    }

    pub fn is_selfadjoint(&self, tol: f64) -> bool {
        self.selfadjoint_defect() <= tol
    }

    /// Largest coefficient modulus of `a* − a`.
    pub fn selfadjoint_defect(&self) -> f64 {
        let adj = self.adjoint();
        adj.coeffs
            .keys()
            .chain(self.coeffs.keys())
            .map(|&(m, n)| (adj.coeff(m, n) - self.coeff(m, n)).norm())
            .fold(0.0, f64::max)
    }

    /// Integer power; negative exponents need a single nonzero monomial.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.params);
        let mut square = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&square)?;
            }
            e >>= 1;
            if e > 0 {
                square = square.multiply(&square)?;
            }
        }
        Ok(acc)
    }

    fn inverse(&self) -> Result<Self> {
        let mut terms = self.terms();
        match (terms.next(), terms.next()) {
            (Some(((m, n), c)), None) => {
                // (c U^m V^n)^{-1} = c^{-1} V^{-n} U^{-m} = c^{-1} ω^{-mn} U^{-m} V^{-n}
                Ok(Self::monomial(
                    self.params,
                    -m,
                    -n,
                    c.inv() * self.params.omega_pow(-m * n),
                ))
            }
            _ => Err(Error::NotInvertible(self.render())),
        }
    }

    /// Canonical text: terms `(c)·U^m·V^n` joined by ` + ` in `(m, n)` order.
    ///
    /// Coefficients use the shortest decimal that round-trips, so parsing the
    /// rendered text reproduces the coefficient map bit for bit.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|((m, n), c)| format!("({})·U^{m}·V^{n}", render_complex(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn render_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        let sign = if c.im.is_sign_negative() { '-' } else { '+' };
        format!("{}{}{}i", c.re, sign, c.im.abs())
    }
}

impl fmt::Display for NCLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
