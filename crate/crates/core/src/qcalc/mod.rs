//! q-calculus on truncated power series in `v = exp(-B|X|)`.
//!
//! The deformation `q = exp(i theta)` with `theta = B h` lies on the unit
//! circle, so every combination used by the steady-wave equation reduces to
//! real trigonometric multipliers: a shift `v -> q^{+-1} v` multiplies `v^n`
//! by `exp(+-i n theta)`, and the symmetric q-derivative
//!
//! ```text
//! D_q f(v) = (f(q v) - f(v / q)) / ((q - 1/q) v)
//! ```
//!
//! maps `v^n` to `[n]_q v^{n-1}` with the real q-integer
//! `[n]_q = sin(n theta) / sin(theta)`.
//!
//! `q` itself is never materialised in the public API; complex arithmetic only
//! appears in [`shift`].

pub mod exact;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The deformation `q = exp(i theta)`, held by its real phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QDeformation {
    pub theta: f64,
}

impl QDeformation {
    pub fn new(theta: f64) -> Self {
        Self { theta }
    }

    /// `theta = B h` for a steady wave of decay rate `B` on depth `h`.
    pub fn from_wave(b: f64, h: f64) -> Self {
        Self { theta: b * h }
    }

    /// True at `theta = k pi` for nonzero integer `k`, where `sin(theta)`
    /// vanishes and the q-integers are undefined. `theta = 0` is the
    /// classical limit and is not singular.
    pub fn is_singular(&self) -> bool {
        let k = (self.theta / std::f64::consts::PI).round();
        k != 0.0
            && (self.theta - k * std::f64::consts::PI).abs() <= 1e-12 * self.theta.abs().max(1.0)
    }

    fn check(&self) -> Result<()> {
        if self.is_singular() {
            Err(Error::SingularDeformation { theta: self.theta })
        } else {
            Ok(())
        }
    }

    fn multiplier(&self, n: usize) -> f64 {
        if self.theta == 0.0 {
            n as f64
        } else {
            (n as f64 * self.theta).sin() / self.theta.sin()
        }
    }
}

/// Truncated formal power series `sum_{n=0..K} c_n v^n`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PowerSeries {
    pub coeffs: Vec<f64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Self {
            coeffs: vec![0.0; len],
        }
    }

    /// `c v^n`.
    pub fn monomial(n: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// Ordinary derivative `f_v`.
    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| n as f64 * c)
                .collect(),
        }
    }

    /// `v f_v`, i.e. coefficient `n` multiplied by `n`.
    pub fn euler(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| n as f64 * c)
                .collect(),
        }
    }

    /// Multiplication by `v`.
    pub fn times_v(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.len() + 1);
        coeffs.push(0.0);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * v + c)
    }

    fn map_indexed(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| f(n, c))
                .collect(),
        }
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let len = self.len().max(rhs.len());
        PowerSeries::new((0..len).map(|n| self.coeff(n) + rhs.coeff(n)).collect())
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let len = self.len().max(rhs.len());
        PowerSeries::new((0..len).map(|n| self.coeff(n) - rhs.coeff(n)).collect())
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    /// Full (untruncated) Cauchy product.
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        if self.is_empty() || rhs.is_empty() {
            return PowerSeries::default();
        }
        let mut out = vec![0.0; self.len() + rhs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries::new(out)
    }
}

/// Power series with complex coefficients, produced by the shift maps.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexSeries {
    pub coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    pub fn from_real(f: &PowerSeries) -> Self {
        Self {
            coeffs: f.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    /// Coefficient `n` multiplied by `exp(i n direction theta)`.
    pub fn shift(&self, d: QDeformation, direction: i32) -> ComplexSeries {
        let sign = if direction >= 0 { 1.0 } else { -1.0 };
        ComplexSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| Complex64::from_polar(1.0, sign * n as f64 * d.theta) * c)
                .collect(),
        }
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn mul(&self, rhs: &ComplexSeries) -> ComplexSeries {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return ComplexSeries::default();
        }
        let mut out = vec![Complex64::default(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexSeries { coeffs: out }
    }

    pub fn add(&self, rhs: &ComplexSeries) -> ComplexSeries {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexSeries {
            coeffs: (0..len).map(|n| self.coeff(n) + rhs.coeff(n)).collect(),
        }
    }

    /// Largest imaginary part, used to check that symmetric combinations are
    /// real.
    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn real_part(&self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| c.re).collect())
    }
}

/// q-integer `[n]_q = (q^n - q^-n) / (q - q^-1) = sin(n theta) / sin(theta)`.
pub fn q_bracket(n: usize, d: QDeformation) -> Result<f64> {
    d.check()?;
    Ok(d.multiplier(n))
}

/// Symmetric q-derivative; the degree drops by one.
pub fn q_derivative(f: &PowerSeries, d: QDeformation) -> Result<PowerSeries> {
    d.check()?;
    Ok(PowerSeries::new(
        f.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * d.multiplier(n))
            .collect(),
    ))
}

/// `f(q^{direction} v)`: coefficient `n` multiplied by `exp(i n direction theta)`.
pub fn shift(f: &PowerSeries, d: QDeformation, direction: i32) -> ComplexSeries {
    ComplexSeries::from_real(f).shift(d, direction)
}

/// `(f(q v) + f(v / q)) / 2`: coefficient `n` multiplied by `cos(n theta)`.
pub fn cos_average(f: &PowerSeries, d: QDeformation) -> PowerSeries {
    f.map_indexed(|n, c| c * (n as f64 * d.theta).cos())
}

/// `(f(q v) - f(v / q)) / (2 i)`: coefficient `n` multiplied by `sin(n theta)`.
pub fn sin_difference(f: &PowerSeries, d: QDeformation) -> PowerSeries {
    f.map_indexed(|n, c| c * (n as f64 * d.theta).sin())
}
