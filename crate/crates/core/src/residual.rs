//! Independent checks: the steady operator equation expanded in powers of
//! `v`, its q-differential transliteration, and the linear dispersion
//! relations.
//!
//! For `eta(X) = sum a_k v^k` with `v = exp(-B X)`, the steady equation
//!
//! ```text
//! A h eta_X + sin(h d) eta + eta_X cos(h d) eta + eta cos(h d) eta_X = 0
//! ```
//!
//! has the `v^k` coefficient
//!
//! ```text
//! r_k = -A h k B a_k - sin(k B h) a_k - k B sum_{n=1}^{k-1} a_n a_{k-n} cos(n B h).
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{positive, Result};
use crate::params::PhysicalParams;
use crate::qcalc::{cos_average, q_derivative, PowerSeries, QDeformation};
use crate::series::SteadyWaveSeries;

/// Residual coefficients `r_1..r_{2K}` with per-order term magnitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `values[k-1] = r_k`.
    pub values: Vec<f64>,
    /// Largest magnitude among the individual terms summed into `r_k`.
    pub scales: Vec<f64>,
}

impl ResidualReport {
    pub fn max_abs(&self) -> f64 {
        self.max_abs_through(self.values.len())
    }

    pub fn max_abs_through(&self, order: usize) -> f64 {
        self.values
            .iter()
            .take(order)
            .map(|r| r.abs())
            .fold(0.0, f64::max)
    }

    /// `max_k |r_k| / scale_k` over `k <= order`, skipping orders whose terms
    /// all vanish.
    pub fn max_relative_through(&self, order: usize) -> f64 {
        self.values
            .iter()
            .zip(&self.scales)
            .take(order)
            .map(|(r, s)| if *s > 0.0 { r.abs() / s } else { r.abs() })
            .fold(0.0, f64::max)
    }
}

/// Exact `v`-expansion of the steady equation through order `2K`.
pub fn steady_residual(series: &SteadyWaveSeries) -> ResidualReport {
    let b = series.decay_rate;
    let h = series.depth;
    let a_vel = series.envelope_velocity;
    let theta = b * h;
    let k_max = series.order;
    let a = |k: usize| series.coeff(k);
    let cos: Vec<f64> = (0..2 * k_max).map(|n| (n as f64 * theta).cos()).collect();

    let mut values = Vec::with_capacity(2 * k_max);
    let mut scales = Vec::with_capacity(2 * k_max);
    for k in 1..=2 * k_max {
        let kf = k as f64;
        let t_vel = -a_vel * h * kf * b * a(k);
        let t_sin = -(kf * theta).sin() * a(k);
        let mut conv = 0.0;
        let mut scale = t_vel.abs().max(t_sin.abs());
        for (n, c) in cos.iter().enumerate().take(k).skip(1) {
            let term = kf * b * a(n) * a(k - n) * c;
            conv += term;
            scale = scale.max(term.abs());
        }
        values.push(t_vel + t_sin - conv);
        scales.push(scale);
    }
    ResidualReport { values, scales }
}

/// `v`-expansion of the shallow-limit steady equation through order `2K`:
///
/// ```text
/// r_k = B^2 h^3 (k^2 - 1) a_k - 6 sum_{n=1}^{k-1} a_n a_{k-n}.
/// ```
pub fn shallow_residual(series: &SteadyWaveSeries) -> ResidualReport {
    let s = series.decay_rate.powi(2) * series.depth.powi(3);
    let k_max = series.order;
    let a = |k: usize| series.coeff(k);

    let mut values = Vec::with_capacity(2 * k_max);
    let mut scales = Vec::with_capacity(2 * k_max);
    for k in 1..=2 * k_max {
        let kf = k as f64;
        let lin = s * (kf * kf - 1.0) * a(k);
        let mut conv = 0.0;
        let mut scale = lin.abs();
        for n in 1..k {
            let term = 6.0 * a(n) * a(k - n);
            conv += term;
            scale = scale.max(term.abs());
        }
        values.push(lin - conv);
        scales.push(scale);
    }
    ResidualReport { values, scales }
}

/// Residual of the equation the series' recorded scheme solves.
pub fn scheme_residual(series: &SteadyWaveSeries) -> ResidualReport {
    match series.ledger.scheme.as_str() {
        "shallow" => shallow_residual(series),
        _ => steady_residual(series),
    }
}

/// The same equation assembled from q-calculus primitives on
/// `f(v) = h A + sum a_k v^k`:
///
/// ```text
/// -A h B g - sin(Bh) v D_q eta - B g <eta>_q - B eta <g>_q,
/// ```
///
/// where `eta = f - hA`, `g = v f_v` and `<.>_q` is the shift average
/// `(F(qv) + F(v/q)) / 2`. Term magnitudes in the report are per-order upper
/// bounds (same formula on absolute values).
pub fn q_residual(
    f: &PowerSeries,
    d: QDeformation,
    b: f64,
    h: f64,
    a_vel: f64,
) -> Result<ResidualReport> {
    positive("B", b)?;
    positive("h", h)?;
    let mut eta = f.clone();
    if eta.is_empty() {
        eta.coeffs.push(0.0);
    }
    eta.coeffs[0] -= h * a_vel;
    let g = eta.euler();

    let sin_term = q_derivative(&eta, d)?.times_v().scale(d.theta.sin());
    let avg_eta = cos_average(&eta, d);
    let avg_g = cos_average(&g, d);
    let quad = &(&g * &avg_eta) + &(&eta * &avg_g);

    let abs = |p: &PowerSeries| PowerSeries::new(p.coeffs.iter().map(|c| c.abs()).collect());
    let quad_abs = &(&abs(&g) * &abs(&avg_eta)) + &(&abs(&eta) * &abs(&avg_g));

    let k_max = f.len().saturating_sub(1).max(1);
    let mut values = Vec::with_capacity(2 * k_max);
    let mut scales = Vec::with_capacity(2 * k_max);
    for k in 1..=2 * k_max {
        let t_vel = -a_vel * h * b * g.coeff(k);
        let t_sin = -sin_term.coeff(k);
        let t_quad = -b * quad.coeff(k);
        values.push(t_vel + t_sin + t_quad);
        scales.push(t_vel.abs().max(t_sin.abs()).max(b * quad_abs.coeff(k)));
    }
    Ok(ResidualReport { values, scales })
}

/// The series as `f(v)` with the constant `a_0 = h A` restored.
pub fn series_as_power_series(series: &SteadyWaveSeries) -> PowerSeries {
    let mut c = Vec::with_capacity(series.order + 1);
    c.push(series.depth * series.envelope_velocity);
    c.extend_from_slice(&series.coeffs);
    PowerSeries::new(c)
}

/// Wavenumber and layer for [`dispersion`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionInput {
    pub k: f64,
    pub params: PhysicalParams,
}

impl DispersionInput {
    pub fn new(k: f64, params: PhysicalParams) -> Result<Self> {
        positive("k", k)?;
        Ok(Self { k, params })
    }
}

/// `omega^2 = k (g + sigma k^2 / rho) tanh(k h)`.
pub fn dispersion(inp: &DispersionInput) -> f64 {
    let p = &inp.params;
    let k = inp.k;
    k * (p.gravity + p.surface_coeff * k * k / p.density) * (k * p.depth).tanh()
}

/// Linear phase speed of the finite-depth evolution equation,
/// `c0 sinh(k h) / (k h)`.
pub fn evolution_symbol(k: f64, h: f64, c0: f64) -> f64 {
    let x = k * h;
    if x.abs() < 1e-4 {
        c0 * (1.0 + x * x / 6.0)
    } else {
        c0 * x.sinh() / x
    }
}

/// [`evolution_symbol`] continued to complex wavenumbers; at `k = i B` it
/// gives `c0 sin(B h) / (B h)`, the steady envelope speed.
pub fn evolution_symbol_complex(k: Complex64, h: f64, c0: f64) -> Complex64 {
    let x = k * h;
    if x.norm() < 1e-4 {
        c0 * (1.0 + x * x / 6.0)
    } else {
        c0 * x.sinh() / x
    }
}
