//! Time evolution on a periodic domain by Fourier collocation and fixed-step
//! RK4, plus the triangular coefficient system of the `v`-expansion.

pub mod coeff_ode;
pub mod rhs;

use std::ops::{Add, Mul};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::grid::{Frame, GridProfile};
use crate::spectral::{symmetrize, SpectralField, SpectralGrid};

pub use coeff_ode::{coefficient_ode_rhs, integrate_coefficients, CoefficientState};
pub use rhs::{gkdv_rhs, kdv_rhs, Band, EvolutionRhs, Gkdv, Kdv};

/// Linear stability limit of classical RK4 on the imaginary axis.
pub const RK4_IMAGINARY_LIMIT: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Exponential spectral filter `exp(-strength ((|j| - jc) / (jmax - jc))^order)`
/// for `|j| > jc = cutoff * jmax`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub enabled: bool,
    /// Fraction of the retained band left untouched, in `(0, 1]`.
    pub cutoff: f64,
    pub order: u32,
    pub strength: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            enabled: true,
            cutoff: 0.85,
            order: 8,
            strength: 36.0,
        }
    }
}

impl FilterConfig {
    pub fn off() -> Self {
        Self {
            enabled: false,
            ..Self::default()
        }
    }

    fn factors(&self, n: usize, band: Band) -> Vec<f64> {
        let jmax = band.jmax as f64;
        let jc = self.cutoff * jmax;
        (0..n)
            .map(|j| {
                let m = if j <= n / 2 { j } else { n - j } as f64;
                if !self.enabled || m <= jc || jmax <= jc {
                    1.0
                } else {
                    let s = ((m - jc) / (jmax - jc)).min(1.0);
                    (-self.strength * s.powi(self.order as i32)).exp()
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveConfig {
    pub dt: f64,
    pub t_end: f64,
    pub filter: FilterConfig,
    pub dealias: bool,
    /// Fraction of the RK4 linear stability limit `2 sqrt(2) / omega_max`
    /// that `dt` may not exceed.
    pub cfl: f64,
    /// Record a snapshot every this many steps (the initial and final states
    /// are always recorded). Zero records only those two.
    pub snapshot_every: usize,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_end: 1.0,
            filter: FilterConfig::default(),
            dealias: true,
            cfl: 0.5,
            snapshot_every: 0,
        }
    }
}

impl EvolveConfig {
    pub fn validate(&self) -> Result<()> {
        positive("dt", self.dt)?;
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "t_end",
                value: self.t_end,
                reason: "must be finite and >= 0",
            });
        }
        if !(self.filter.cutoff > 0.0 && self.filter.cutoff <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "filter.cutoff",
                value: self.filter.cutoff,
                reason: "must lie in (0, 1]",
            });
        }
        positive("cfl", self.cfl)?;
        Ok(())
    }

    /// Step count and the exact step used: `t_end` is reached in
    /// `round(t_end / dt)` equal steps.
    pub fn steps(&self) -> (usize, f64) {
        if self.t_end == 0.0 {
            return (0, self.dt);
        }
        let n = ((self.t_end / self.dt).round() as usize).max(1);
        (n, self.t_end / n as f64)
    }
}

/// Largest linear plus advective frequency over the retained band.
pub fn max_frequency(
    rhs: &dyn EvolutionRhs,
    grid: &SpectralGrid,
    c0: f64,
    band: Band,
    amplitude: f64,
) -> f64 {
    (1..=band.jmax)
        .map(|j| {
            let k = grid.wavenumber_at(j);
            rhs.linear_frequency(k, grid.depth(), c0).abs()
                + rhs.advective_frequency(k, grid.depth(), c0, amplitude)
        })
        .fold(0.0, f64::max)
}

/// Largest stable RK4 step, `2 sqrt(2) / omega_max`.
pub fn stability_bound(
    rhs: &dyn EvolutionRhs,
    grid: &SpectralGrid,
    c0: f64,
    dealias: bool,
    amplitude: f64,
) -> f64 {
    let w = max_frequency(rhs, grid, c0, Band::new(grid.len(), dealias), amplitude);
    if w > 0.0 {
        RK4_IMAGINARY_LIMIT / w
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub rhs: String,
    pub steps: usize,
    pub dt: f64,
    pub stability_bound: f64,
    pub mass_initial: f64,
    pub mass_final: f64,
    /// Largest `|mass(t) - mass(0)| / max(|mass(0)|, int |eta0|)` over all steps.
    pub max_mass_drift: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub snapshots: Vec<GridProfile>,
    pub diagnostics: Diagnostics,
    /// Final state on the spectral grid.
    pub final_field: SpectralField,
}

impl Trajectory {
    /// Long-format CSV `t,x,eta` of every snapshot.
    pub fn to_long_csv(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::from("t,x,eta\n");
        for s in &self.snapshots {
            let t = crate::grid::fmt_f64(s.time);
            for (x, e) in s.xs().iter().zip(s.values()) {
                writeln!(
                    out,
                    "{t},{},{}",
                    crate::grid::fmt_f64(*x),
                    crate::grid::fmt_f64(*e)
                )
                .unwrap();
            }
        }
        out
    }
}

/// One classical RK4 step.
pub fn rk4_step<T, F>(y: &[T], t: f64, dt: f64, mut f: F) -> Result<Vec<T>>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: FnMut(f64, &[T]) -> Result<Vec<T>>,
{
    let axpy = |a: &[T], b: &[T], s: f64| -> Vec<T> {
        a.iter().zip(b).map(|(&x, &k)| x + k * s).collect()
    };
    let k1 = f(t, y)?;
    let k2 = f(t + 0.5 * dt, &axpy(y, &k1, 0.5 * dt))?;
    let k3 = f(t + 0.5 * dt, &axpy(y, &k2, 0.5 * dt))?;
    let k4 = f(t + dt, &axpy(y, &k3, dt))?;
    Ok(y.iter()
        .enumerate()
        .map(|(i, &x)| x + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0))
        .collect())
}

fn snapshot(grid: &SpectralGrid, spectrum: &[Complex64], time: f64) -> Result<GridProfile> {
    GridProfile::new(grid.positions(), grid.inverse(spectrum), Frame::Lab, time)
}

/// Integrates `eta_t = rhs(eta)` from `field` with fixed-step RK4.
pub fn integrate(
    field: &SpectralField,
    c0: f64,
    config: &EvolveConfig,
    rhs: &dyn EvolutionRhs,
) -> Result<Trajectory> {
    config.validate()?;
    positive("c0", c0)?;
    let grid: Arc<SpectralGrid> = field.grid().clone();
    let n = grid.len();
    let band = Band::new(n, config.dealias);
    let filter = config.filter.factors(n, band);

    let mut state = field.spectrum();
    band.project(&mut state);
    symmetrize(&mut state);
    rhs::check_finite(&state, 0.0)?;

    let amplitude = field.values().iter().map(|x| x.abs()).fold(0.0, f64::max);
    let bound = stability_bound(rhs, &grid, c0, config.dealias, amplitude);
    let (steps, dt) = config.steps();
    if dt > config.cfl * bound {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
            reason: "exceeds cfl x RK4 stability bound for this grid",
        });
    }

    let mass = |s: &[Complex64]| s[0].re * grid.length() / n as f64;
    let mass0 = mass(&state);
    let mass_scale = mass0
        .abs()
        .max(field.values().iter().map(|x| x.abs()).sum::<f64>() * grid.dx())
        .max(f64::MIN_POSITIVE);
    let mut max_drift: f64 = 0.0;

    let mut snapshots = vec![snapshot(&grid, &state, 0.0)?];
    let mut t = 0.0;
    for step in 1..=steps {
        let last = state.clone();
        let advanced = rk4_step(&state, t, dt, |time, y| {
            let out = rhs.spectral_rhs(&grid, c0, y, band);
            rhs::check_finite(&out, time)?;
            Ok(out)
        })
        .and_then(|mut next| {
            for (c, f) in next.iter_mut().zip(&filter) {
                *c *= *f;
            }
            symmetrize(&mut next);
            rhs::check_finite(&next, step as f64 * dt)?;
            Ok(next)
        });
        state = advanced.map_err(|e| with_last_finite(e, &last))?;
        t = step as f64 * dt;
        max_drift = max_drift.max((mass(&state) - mass0).abs() / mass_scale);
        if step == steps || (config.snapshot_every > 0 && step % config.snapshot_every == 0) {
            snapshots.push(snapshot(&grid, &state, t)?);
        }
    }

    let final_field = SpectralField::new(grid.clone(), grid.inverse(&state))?;
    Ok(Trajectory {
        snapshots,
        diagnostics: Diagnostics {
            rhs: rhs.name().to_string(),
            steps,
            dt,
            stability_bound: bound,
            mass_initial: mass0,
            mass_final: mass(&state),
            max_mass_drift: max_drift,
        },
        final_field,
    })
}

/// Replaces the (non-finite) spectrum of an instability error with the
/// magnitudes of the last finite state.
fn with_last_finite(e: Error, last: &[Complex64]) -> Error {
    match e {
        Error::Instability { time, .. } => {
            let spectrum: Vec<f64> = last.iter().map(|c| c.norm()).collect();
            let (index, max_mode) =
                spectrum
                    .iter()
                    .copied()
                    .enumerate()
                    .fold(
                        (0, 0.0),
                        |best, (i, m)| if m > best.1 { (i, m) } else { best },
                    );
            Error::Instability {
                time,
                max_mode,
                index,
                spectrum,
            }
        }
        other => other,
    }
}

/// Steady shallow-water soliton centred at `center` on a periodic grid.
pub fn soliton_field(grid: Arc<SpectralGrid>, b: f64, center: f64) -> SpectralField {
    let h = grid.depth();
    let length = grid.length();
    SpectralField::from_fn(grid, |x| {
        // nearest periodic image
        let mut d = x - center;
        d -= length * (d / length).round();
        crate::steady::resum_koebe(b, h, d)
    })
}
