//! Convergence-radius and Bieberbach-bound diagnostics for steady series.
//!
//! Both work on the normalized coefficients `alpha_k = a_k / a1^k` of
//! `g(z) = sum alpha_k z^k` (with `z = a1 v`), computed in log space since
//! `alpha_k` overflows for small seeds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::SteadyWaveSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    /// Cauchy-Hadamard `1 / max |alpha_k|^{1/k}` over the last quartile.
    pub cauchy_hadamard: f64,
    /// Tail fit of `ln|alpha_k| = c + p ln k - k ln R`; exact for
    /// `alpha_k = k^p R^{-k}` families such as the Koebe series.
    pub fitted: f64,
    /// Orders used, inclusive.
    pub tail: (usize, usize),
}

/// Radius of convergence of `sum alpha_k z^k` from the coefficient tail.
/// Requires `K >= 8`.
pub fn radius_estimate(series: &SteadyWaveSeries) -> Result<RadiusEstimate> {
    let k_max = series.order;
    if k_max < 8 {
        return Err(Error::InvalidParameter {
            name: "K",
            value: k_max as f64,
            reason: "radius estimate needs at least 8 coefficients",
        });
    }
    if series.a1() == 0.0 {
        return Err(Error::UndefinedRadius);
    }
    let start = (3 * k_max) / 4;
    let tail: Vec<(f64, f64)> = (start..=k_max)
        .map(|k| (k as f64, series.log_abs_alpha(k)))
        .filter(|(_, l)| l.is_finite())
        .collect();
    if tail.is_empty() {
        return Err(Error::UndefinedRadius);
    }
    let limsup = tail
        .iter()
        .map(|(k, l)| l / k)
        .fold(f64::NEG_INFINITY, f64::max);
    let cauchy_hadamard = (-limsup).exp();

    // The fit uses the last half so that it has enough points for three
    // parameters on short series.
    let fit_pts: Vec<(f64, f64)> = ((k_max / 2).max(2)..=k_max)
        .map(|k| (k as f64, series.log_abs_alpha(k)))
        .filter(|(_, l)| l.is_finite())
        .collect();
    let fitted = fit_log_radius(&fit_pts).unwrap_or(cauchy_hadamard);
    Ok(RadiusEstimate {
        cauchy_hadamard,
        fitted,
        tail: (start, k_max),
    })
}

/// Least squares for `y = c + p ln k + s k`, returns `exp(-s)`.
fn fit_log_radius(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 3 {
        return None;
    }
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut aty = nalgebra::Vector3::<f64>::zeros();
    for &(k, y) in pts {
        let row = nalgebra::Vector3::new(1.0, k.ln(), k);
        ata += row * row.transpose();
        aty += row * y;
    }
    let sol = ata.lu().solve(&aty)?;
    let r = (-sol[2]).exp();
    r.is_finite().then_some(r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KoebeReport {
    /// Radius `R` used to rescale `z -> R w`.
    pub radius: f64,
    /// `|c_k| / k` for `k = 1..K`, with `c_k = alpha_k R^{k-1}`.
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    /// Order attaining `max_ratio`.
    pub argmax: usize,
}

/// Rescales `g(z)` to unit radius and unit first coefficient,
/// `c_k = alpha_k R^{k-1}`, and reports `|c_k| / k` against the Bieberbach
/// bound `|c_k| <= k`. `radius = None` uses the fitted tail estimate (or, for
/// series shorter than 8 terms, `R = |a1|`).
pub fn koebe_bound_check(series: &SteadyWaveSeries, radius: Option<f64>) -> KoebeReport {
    let radius = radius.unwrap_or_else(|| {
        radius_estimate(series)
            .map(|r| r.fitted)
            .unwrap_or(series.a1().abs())
    });
    let ln_r = radius.ln();
    let ratios: Vec<f64> = (1..=series.order)
        .map(|k| {
            let l = series.log_abs_alpha(k);
            if l == f64::NEG_INFINITY {
                0.0
            } else {
                (l + (k as f64 - 1.0) * ln_r).exp() / k as f64
            }
        })
        .collect();
    let (argmax, max_ratio) =
        ratios.iter().enumerate().fold(
            (0, 0.0),
            |acc, (i, &r)| if r > acc.1 { (i + 1, r) } else { acc },
        );
    KoebeReport {
        radius,
        ratios,
        max_ratio,
        argmax,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Ledger;
    use crate::steady::shallow_coeffs;

    fn from_alpha(alpha: impl Fn(usize) -> f64, k_max: usize, a1: f64) -> SteadyWaveSeries {
        let coeffs = (1..=k_max).map(|k| alpha(k) * a1.powi(k as i32)).collect();
        SteadyWaveSeries::new(1.0, 1.0, -0.84, coeffs, Ledger::default()).unwrap()
    }

    #[test]
    fn geometric_alpha() {
        let s: f64 = 0.5;
        let series = from_alpha(|k| s.powi(k as i32 - 1), 64, 0.9);
        let r = radius_estimate(&series).unwrap();
        // s^{-(k-1)/k} at the first tail order k = 48
        assert!((r.cauchy_hadamard - s.powf(-47.0 / 48.0)).abs() < 1e-12);
        assert!((r.fitted - 1.0 / s).abs() < 1e-8);
    }

    #[test]
    fn koebe_type_alpha() {
        // alpha_k = k s^{k-1}: R -> 1/s
        let s: f64 = 3.0;
        let series = from_alpha(|k| k as f64 * s.powi(k as i32 - 1), 200, 0.05);
        let r = radius_estimate(&series).unwrap();
        assert!(
            (r.cauchy_hadamard * s - 1.0).abs() < 0.04,
            "{}",
            r.cauchy_hadamard
        );
        assert!((r.fitted * s - 1.0).abs() < 1e-9, "{}", r.fitted);
    }

    #[test]
    fn shallow_series_radius_is_b2h3() {
        let (b, h) = (1.0, 1.0);
        let series = shallow_coeffs(b, h, 400, -1.0).unwrap();
        let r = radius_estimate(&series).unwrap();
        assert!((r.cauchy_hadamard - 1.0).abs() < 0.02);
        assert!((r.fitted - 1.0).abs() < 1e-8);
    }

    #[test]
    fn short_or_zero_series() {
        let series = from_alpha(|_| 1.0, 5, 0.5);
        assert!(radius_estimate(&series).is_err());
        let mut coeffs = vec![0.0; 20];
        coeffs[0] = 1.0;
        let zero_tail = SteadyWaveSeries::new(1.0, 1.0, -0.8, coeffs, Ledger::default()).unwrap();
        assert_eq!(radius_estimate(&zero_tail), Err(Error::UndefinedRadius));
    }

    #[test]
    fn shallow_series_is_the_koebe_equality_case() {
        let (b, h) = (1.0, 0.1);
        let s = b * b * h * h * h;
        let series = shallow_coeffs(b, h, 100, -s).unwrap();
        let report = koebe_bound_check(&series, Some(s));
        for (k, r) in report.ratios.iter().enumerate() {
            assert!((r - 1.0).abs() < 1e-10, "k={} ratio={r}", k + 1);
        }
    }

    #[test]
    fn single_term_is_within_bound() {
        let series = SteadyWaveSeries::new(1.0, 1.0, -0.84, vec![0.3], Ledger::default()).unwrap();
        let report = koebe_bound_check(&series, None);
        assert_eq!(report.ratios, vec![1.0]);
        assert!(report.max_ratio <= 1.0);
    }
}
