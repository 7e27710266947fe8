use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `exp(2πi k/q)`, with `k` reduced modulo `q` before the angle is formed.
///
/// Quarter-turn multiples are returned exactly so that phases such as `-1`
/// and `i` carry no rounding residue.
pub fn root_of_unity(k: i64, q: u32) -> Complex64 {
    let q = q as i64;
    let j = k.rem_euclid(q);
    if (4 * j) % q == 0 {
        return match 4 * j / q {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * j as f64 / q as f64)
}

/// Arithmetic data `(p, q, r, ω, σ)` of the algebra `A_{p/q}`.
///
/// `σ = exp(2πi/q)`, `ω = σ^p`, and `r` is the inverse of `p` modulo `q`, so
/// that `ω^r = σ`.
#[derive(Clone, Copy, Debug)]
pub struct ModularParams {
    p: u32,
    q: u32,
    r: u32,
    omega: Complex64,
    sigma: Complex64,
}

impl ModularParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q < 2 || p < 1 || p > q - 1 {
            return Err(Error::Range { p, q });
        }
        if gcd(p, q) != 1 {
            return Err(Error::Coprimality { p, q });
        }
        let r = (1..q)
            .find(|k| (p * k) % q == 1)
            .expect("coprime p has an inverse mod q");
        let (p, q, r) = (p as u32, q as u32, r as u32);
        Ok(Self {
            p,
            q,
            r,
            omega: root_of_unity(p as i64, q),
            sigma: root_of_unity(1, q),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Inverse of `p` modulo `q`.
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }

    pub fn dim(&self) -> usize {
        self.q as usize
    }

    /// `ω^k` from the exact angle `2π k p / q`.
    pub fn omega_pow(&self, k: i64) -> Complex64 {
        let q = self.q as i64;
        root_of_unity(k.rem_euclid(q) * self.p as i64, self.q)
    }

    pub fn sigma_pow(&self, k: i64) -> Complex64 {
        root_of_unity(k, self.q)
    }

    /// `p/q`.
    pub fn theta(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl PartialEq for ModularParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q
    }
}

impl Eq for ModularParams {}

impl fmt::Display for ModularParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{{{}/{}}}", self.p, self.q)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All valid `(p, q)` with `2 <= q <= q_max`, ordered by `q` then `p`.
pub fn coprime_pairs(q_max: u32) -> Vec<(u32, u32)> {
    (2..=q_max)
        .flat_map(|q| {
            (1..q)
                .filter(move |&p| gcd(p as i64, q as i64) == 1)
                .map(move |p| (p, q))
        })
        .collect()
}
