//! Coefficient dynamics of `eta(x, t) = sum_k a_k(t) exp(-k B x)`:
//!
//! ```text
//! (h / c0) da_k/dt = sin(k B h) a_k + k B sum_{n=0}^{k} a_n a_{k-n} cos(n B h).
//! ```
//!
//! The system is lower triangular: `da_k/dt` depends only on `a_0..a_k`.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Result};

use super::rk4_step;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientState {
    pub t: f64,
    /// `a[k]` for `k = 0..=K`.
    pub a: Vec<f64>,
    pub b: f64,
    pub h: f64,
    pub c0: f64,
}

impl CoefficientState {
    pub fn new(a: Vec<f64>, b: f64, h: f64, c0: f64) -> Result<Self> {
        positive("B", b)?;
        positive("h", h)?;
        positive("c0", c0)?;
        Ok(Self {
            t: 0.0,
            a,
            b,
            h,
            c0,
        })
    }

    /// State from steady coefficients `a_1..a_K` with `a_0 = 0`.
    pub fn from_steady(coeffs: &[f64], b: f64, h: f64, c0: f64) -> Result<Self> {
        let mut a = Vec::with_capacity(coeffs.len() + 1);
        a.push(0.0);
        a.extend_from_slice(coeffs);
        Self::new(a, b, h, c0)
    }
}

/// `da_k/dt` for all `k`.
pub fn coefficient_ode_rhs(a: &[f64], b: f64, h: f64, c0: f64) -> Vec<f64> {
    let theta = b * h;
    let cos: Vec<f64> = (0..a.len()).map(|n| (n as f64 * theta).cos()).collect();
    (0..a.len())
        .map(|k| {
            let kf = k as f64;
            let conv: f64 = (0..=k).map(|n| a[n] * a[k - n] * cos[n]).sum();
            c0 / h * ((kf * theta).sin() * a[k] + kf * b * conv)
        })
        .collect()
}

/// Advances `state` to `t_end` in `steps` equal RK4 steps.
pub fn integrate_coefficients(
    state: &CoefficientState,
    t_end: f64,
    steps: usize,
) -> Result<CoefficientState> {
    let steps = steps.max(1);
    let dt = (t_end - state.t) / steps as f64;
    let (b, h, c0) = (state.b, state.h, state.c0);
    let mut a = state.a.clone();
    let mut t = state.t;
    for i in 0..steps {
        a = rk4_step(&a, t, dt, |_, y| Ok(coefficient_ode_rhs(y, b, h, c0)))?;
        t = state.t + (i + 1) as f64 * dt;
    }
    Ok(CoefficientState { t, a, ..*state })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steady::{envelope_velocity, recurrence_coeffs};

    #[test]
    fn zero_is_a_fixed_point() {
        let s = CoefficientState::new(vec![0.0; 8], 1.0, 0.5, 2.0).unwrap();
        let out = integrate_coefficients(&s, 1.0, 10).unwrap();
        assert!(out.a.iter().all(|&x| x == 0.0));
        assert!((out.t - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rhs_is_triangular() {
        let a = vec![0.0, 0.3, -0.2, 0.1, 0.05];
        let base = coefficient_ode_rhs(&a, 0.8, 0.9, 1.3);
        let mut bumped = a.clone();
        bumped[3] += 1.0;
        let out = coefficient_ode_rhs(&bumped, 0.8, 0.9, 1.3);
        assert_eq!(&out[..3], &base[..3]);
        assert_ne!(out[3], base[3]);
    }

    #[test]
    fn zero_mode_stays_zero() {
        let a = vec![0.0, 0.3, -0.2, 0.1];
        assert_eq!(coefficient_ode_rhs(&a, 1.0, 1.0, 1.0)[0], 0.0);
    }

    #[test]
    fn steady_series_translates() {
        let (b, h, c0) = (1.0, 0.3, 1.5);
        let series = recurrence_coeffs(b, h, 12, -0.01).unwrap();
        let speed = -envelope_velocity(b, h).unwrap() * c0;
        let rhs = coefficient_ode_rhs(
            &CoefficientState::from_steady(&series.coeffs, b, h, c0)
                .unwrap()
                .a,
            b,
            h,
            c0,
        );
        for (k, r) in rhs.iter().enumerate().take(13).skip(1) {
            let expected = k as f64 * b * speed * series.coeff(k);
            assert!((r - expected).abs() <= 1e-13 * expected.abs().max(1e-300));
        }
    }
}
