//! Truncated integer power series in one variable `q`, eta products and
//! the identity `1 − Σ m(t) qᵗ = ∏ (1 − qᵏ)^{τ(k)}` along an isotropic ray.
//!
//! Two indexings of `τ` appear here. The exponent sequence `τ(k)` of the
//! product is indexed from `k = 1` and stored with `τ(k)` at list position
//! `k − 1`. Ramanujan's function is the coefficient sequence of
//! `q ∏ (1 − qⁿ)²⁴`, so `ramanujan_tau(k)` is coefficient `k − 1` of
//! `eta_power(24, ·)`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Vector};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Int>,
}

impl PowerSeries {
    /// The zero series with coefficients `c₀..c_n`.
    pub fn zero(n: usize) -> Self {
        PowerSeries { coeffs: vec![Int::zero(); n + 1] }
    }

    pub fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = Int::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least c₀");
        PowerSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Int {
        self.coeffs.get(k).cloned().unwrap_or_else(Int::zero)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(n + 1, Int::zero());
        PowerSeries { coeffs: c }
    }

    /// Multiplies by `(1 − qᵏ)^e` for any integer `e`, via the binomial
    /// series.
    pub fn mul_binomial(&mut self, k: usize, e: &Int) {
        assert!(k >= 1);
        if e.is_zero() {
            return;
        }
        let n = self.truncation();
        // coefficients of (1 − x)^e up to x^{n/k}
        let terms = n / k;
        let mut b = Vec::with_capacity(terms + 1);
        let mut c = Int::one();
        b.push(c.clone());
        for j in 1..=terms {
            c = -(c * (e - Int::from(j - 1))) / Int::from(j);
            b.push(c.clone());
        }
        let mut out = vec![Int::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let d = i + j * k;
                if d > n {
                    break;
                }
                out[d] += a * bj;
            }
        }
        self.coeffs = out;
    }

    /// Inverse of a series with `c₀ = ±1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return Err(Error::Invalid("only series with unit constant term are invertible".into()));
        }
        let n = self.truncation();
        let mut inv = vec![Int::zero(); n + 1];
        inv[0] = c0.clone();
        for k in 1..=n {
            let mut s = Int::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -(s * c0);
        }
        Ok(PowerSeries { coeffs: inv })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.truncation());
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.truncation().min(rhs.truncation());
        PowerSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.truncation().min(rhs.truncation());
        PowerSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.truncation().min(rhs.truncation());
        let mut out = vec![Int::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }
}

/// `∏_{k ≥ 1} (1 − qᵏ)^e` up to `qⁿ`.
pub fn eta_power(e: i64, n: usize) -> PowerSeries {
    let mut s = PowerSeries::one(n);
    let e = Int::from(e);
    for k in 1..=n {
        s.mul_binomial(k, &e);
    }
    s
}

/// Ramanujan's `τ(1..=n)`.
pub fn ramanujan_tau(n: usize) -> Vec<Int> {
    if n == 0 {
        return Vec::new();
    }
    eta_power(24, n - 1).coeffs().to_vec()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    TauToM,
    MToTau,
}

fn check_len(name: &str, xs: &[Int], n: usize) -> Result<()> {
    if xs.len() < n {
        return Err(Error::OutOfRange(format!("{name} has {} coefficients, need {n}", xs.len())));
    }
    Ok(())
}

/// `m(1..=n)` from `τ(1..=n)`: `m(t) = −[qᵗ] ∏ (1 − qᵏ)^{τ(k)}`.
pub fn tau_to_m(tau: &[Int], n: usize) -> Result<Vec<Int>> {
    check_len("tau", tau, n)?;
    let mut p = PowerSeries::one(n);
    for k in 1..=n {
        p.mul_binomial(k, &tau[k - 1]);
    }
    Ok((1..=n).map(|t| -p.coeff(t)).collect())
}

/// `τ(1..=n)` from `m(1..=n)`, one degree at a time: the factor
/// `(1 − qᵗ)^{τ(t)}` is the first to touch `qᵗ` linearly.
pub fn m_to_tau(m: &[Int], n: usize) -> Result<Vec<Int>> {
    check_len("m", m, n)?;
    let mut p = PowerSeries::one(n);
    let mut tau = Vec::with_capacity(n);
    for t in 1..=n {
        let x = p.coeff(t) + &m[t - 1];
        p.mul_binomial(t, &x);
        tau.push(x);
    }
    Ok(tau)
}

pub fn cusp_identity(direction: Direction, input: &[Int], n: usize) -> Result<Vec<Int>> {
    match direction {
        Direction::TauToM => tau_to_m(input, n),
        Direction::MToTau => m_to_tau(input, n),
    }
}

/// The multiples `t a₀` of a primitive isotropic vector carried with
/// nonzero multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayMultiset {
    pub a0: Vector,
    pub entries: Vec<(usize, Int)>,
}

pub fn build_h_ray(tau: &[Int], a0: &[Int], n: usize) -> Result<RayMultiset> {
    check_len("tau", tau, n)?;
    let entries = (1..=n).filter(|&t| !tau[t - 1].is_zero()).map(|t| (t, tau[t - 1].clone())).collect();
    Ok(RayMultiset { a0: a0.to_vec(), entries })
}

/// Whether `∏ (1 − qᵏ)^{τ(k)} = 1 − Σ m(t) qᵗ` through degree `n`.
pub fn corrected_denominator_ray_check(tau: &[Int], m: &[Int], n: usize) -> Result<bool> {
    check_len("m", m, n)?;
    Ok(tau_to_m(tau, n)?[..] == m[..n])
}
