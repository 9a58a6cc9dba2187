//! Steady translating waves `eta(x + A c0 t)` of the finite-depth equation.
//!
//! On each semiaxis the profile is expanded in `v = exp(-B|X|)`:
//! `eta = sum_{k>=1} a_k v^k`. Collecting powers of `v` in the steady
//! equation fixes the envelope velocity `A = -sin(Bh)/(Bh)` at first order and
//! gives a triangular quadratic recurrence for `a_2, a_3, ...` in terms of the
//! free seed `a_1`. The seed is then fixed by requiring a continuous slope at
//! the crest, `f_v(1) = 0`.

pub mod diagnostics;
pub mod pade;
pub mod resum;
pub mod scheme;

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::series::{Constants, Ledger, SteadyWaveSeries};

pub use diagnostics::{koebe_bound_check, radius_estimate, KoebeReport, RadiusEstimate};
pub use resum::{sample_profile, PadeResummation, PartialSum, Resummation, SampleOptions};
pub use scheme::{CoefficientScheme, FullRecurrence, ShallowRecurrence};

/// `A = -sin(Bh) / (Bh)`.
pub fn envelope_velocity(b: f64, h: f64) -> Result<f64> {
    positive("B", b)?;
    positive("h", h)?;
    let theta = b * h;
    let k = (theta / std::f64::consts::PI).round();
    if k >= 1.0 && (theta - k * std::f64::consts::PI).abs() <= 1e-12 * theta.max(1.0) {
        return Err(Error::DegenerateVelocity { bh: theta });
    }
    Ok(-theta.sin() / theta)
}

/// Series from `scheme` seeded with `a1`, with its ledger filled in.
pub fn build_series(
    scheme: &dyn CoefficientScheme,
    b: f64,
    h: f64,
    order: usize,
    a1: f64,
    a1_matched: bool,
) -> Result<SteadyWaveSeries> {
    if order == 0 {
        return Err(Error::InvalidParameter {
            name: "K",
            value: 0.0,
            reason: "truncation order must be >= 1",
        });
    }
    let a = envelope_velocity(b, h)?;
    let coeffs = scheme.coefficients(b, h, order, a1)?;
    SteadyWaveSeries::new(
        b,
        h,
        a,
        coeffs,
        Ledger {
            constants: Constants::Rederived,
            scheme: scheme.name().to_string(),
            a1_matched,
        },
    )
}

/// Steady series from the full finite-depth recurrence seeded with `a1`.
pub fn recurrence_coeffs(b: f64, h: f64, order: usize, a1: f64) -> Result<SteadyWaveSeries> {
    build_series(&FullRecurrence, b, h, order, a1, false)
}

/// Steady series from the shallow-water truncation of the recurrence.
pub fn shallow_coeffs(b: f64, h: f64, order: usize, a1: f64) -> Result<SteadyWaveSeries> {
    build_series(&ShallowRecurrence, b, h, order, a1, false)
}

/// Closed-form solution of the shallow recurrence: `a_k = B^2 h^3 k r^k` with
/// `r = a1 / (B^2 h^3)`.
pub fn shallow_closed_form(b: f64, h: f64, k: usize, a1: f64) -> f64 {
    let s = b * b * h * h * h;
    s * k as f64 * (a1 / s).powi(k as i32)
}

/// Tuning for [`match_a1`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchOptions {
    /// Half-width of the scanned interval, in units of the natural seed scale.
    pub bracket: f64,
    pub scan_points: usize,
    /// Bisection stops when the bracket is narrower than this (scaled units).
    pub tol: f64,
    pub max_pade_order: usize,
}

impl Default for MatchOptions {
    fn default() -> Self {
        Self {
            bracket: 8.0,
            scan_points: 4001,
            tol: 1e-12,
            max_pade_order: 40,
        }
    }
}

/// Outcome of the smoothness matching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub a1: f64,
    /// Every real root found in the scanned interval, ascending by magnitude.
    pub candidates: Vec<Candidate>,
    /// Natural seed scale `lambda`; the condition is solved in `rho = a1 / lambda`.
    pub scale: f64,
    /// Reduced degrees of the Padé approximant of `f_v(1)`.
    pub pade_degrees: (usize, usize),
    pub interval: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub a1: f64,
    pub monotone: bool,
}

/// Seed scale `lambda = 1 / max_k |alpha_k|^{1/(k-1)}` over the first few
/// orders, so that `alpha_k lambda^{k-1}` stays O(1).
pub fn seed_scale(scheme: &dyn CoefficientScheme, b: f64, h: f64, order: usize) -> Result<f64> {
    let probe = scheme.coefficients(b, h, order.min(6), 1.0)?;
    let growth = probe
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, a)| **a != 0.0 && a.is_finite())
        .map(|(i, a)| a.abs().powf(1.0 / i as f64))
        .fold(0.0, f64::max);
    Ok(if growth > 0.0 { 1.0 / growth } else { 1.0 })
}

/// Fixes `a1` from the crest smoothness condition
/// `f_v(1) = sum_n n alpha_n a1^{n-1} = 0`.
///
/// The truncated condition is resummed by a diagonal Padé approximant (the
/// shallow root sits on the boundary of the disk of convergence, where the
/// partial sums do not converge), real roots are bracketed on a scan and
/// refined by bisection. Among the roots, the smallest `|a1|` whose profile is
/// bounded and monotone on each semiaxis is selected.
pub fn match_a1(
    b: f64,
    h: f64,
    order: usize,
    scheme: &dyn CoefficientScheme,
    opts: &MatchOptions,
) -> Result<MatchResult> {
    envelope_velocity(b, h)?;
    let scale = seed_scale(scheme, b, h, order)?;
    let lo = -opts.bracket * scale;
    let hi = opts.bracket * scale;
    let no_root = |detail: String| Error::NoMatchingRoot { lo, hi, detail };

    let a = scheme.coefficients(b, h, order, scale)?;
    if a.iter().any(|x| !x.is_finite()) {
        return Err(no_root("coefficients overflow at the seed scale".into()));
    }
    // f_v(1) as a series in rho = a1 / scale: c_{n-1} = n a_n(scale) / scale
    let cond: Vec<f64> = a
        .iter()
        .enumerate()
        .map(|(i, x)| (i + 1) as f64 * x / scale)
        .collect();
    let approx = pade::diagonal(&cond, opts.max_pade_order);

    let qmax = {
        let grid = crate::grid::linspace(-opts.bracket, opts.bracket, opts.scan_points.max(3));
        grid.iter()
            .map(|&r| approx.denominator_at(r).abs())
            .fold(0.0, f64::max)
    };
    let grid = crate::grid::linspace(-opts.bracket, opts.bracket, opts.scan_points.max(3));
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let (r0, r1) = (w[0], w[1]);
        let (p0, p1) = (approx.numerator_at(r0), approx.numerator_at(r1));
        let (q0, q1) = (approx.denominator_at(r0), approx.denominator_at(r1));
        if q0.signum() != q1.signum() {
            continue;
        }
        if p0 == 0.0 {
            roots.push(r0);
            continue;
        }
        if p0.signum() == p1.signum() {
            continue;
        }
        let (mut x0, mut x1) = (r0, r1);
        let mut f0 = p0;
        while x1 - x0 > opts.tol {
            let mid = 0.5 * (x0 + x1);
            let fm = approx.numerator_at(mid);
            if fm == 0.0 {
                x0 = mid;
                x1 = mid;
                break;
            }
            if fm.signum() == f0.signum() {
                x0 = mid;
                f0 = fm;
            } else {
                x1 = mid;
            }
        }
        let root = 0.5 * (x0 + x1);
        if approx.denominator_at(root).abs() > 1e-8 * qmax {
            roots.push(root);
        }
    }
    if roots.is_empty() {
        return Err(no_root(format!(
            "no sign change of f_v(1) (Padé degrees {:?})",
            approx.degrees()
        )));
    }

    let mut candidates: Vec<Candidate> = roots
        .iter()
        .map(|&r| {
            let a1 = r * scale;
            let monotone = scheme
                .coefficients(b, h, order, a1)
                .map(|c| profile_is_monotone(&c, opts.max_pade_order))
                .unwrap_or(false);
            Candidate { a1, monotone }
        })
        .collect();
    candidates.sort_by(|x, y| x.a1.abs().total_cmp(&y.a1.abs()));
    let chosen = candidates
        .iter()
        .find(|c| c.monotone)
        .ok_or_else(|| {
            no_root(format!(
                "{} root(s) found but none gives a bounded monotone profile",
                candidates.len()
            ))
        })?
        .a1;
    Ok(MatchResult {
        a1: chosen,
        candidates,
        scale,
        pade_degrees: approx.degrees(),
        interval: (lo, hi),
    })
}

/// Bounded and monotone in `v` on `(0, 1]`, i.e. on each semiaxis in `X`.
fn profile_is_monotone(coeffs: &[f64], max_order: usize) -> bool {
    let mut c = Vec::with_capacity(coeffs.len() + 1);
    c.push(0.0);
    c.extend_from_slice(coeffs);
    let approx = pade::diagonal(&c, max_order);
    let vs = crate::grid::linspace(1e-3, 1.0, 400);
    let q0 = approx.denominator_at(0.0);
    if vs
        .iter()
        .any(|&v| approx.denominator_at(v).signum() != q0.signum())
    {
        return false;
    }
    let vals: Vec<f64> = vs.iter().map(|&v| approx.eval(v)).collect();
    let amp = vals.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if !amp.is_finite() {
        return false;
    }
    let slack = 1e-9 * amp;
    let rising = vals.windows(2).all(|w| w[1] >= w[0] - slack);
    let falling = vals.windows(2).all(|w| w[1] <= w[0] + slack);
    rising || falling
}

/// Series with `a1` fixed by [`match_a1`].
pub fn matched_series(
    b: f64,
    h: f64,
    order: usize,
    scheme: &dyn CoefficientScheme,
    opts: &MatchOptions,
) -> Result<(SteadyWaveSeries, MatchResult)> {
    let m = match_a1(b, h, order, scheme, opts)?;
    let series = build_series(scheme, b, h, order, m.a1, true)?;
    Ok((series, m))
}

/// Closed-form shallow-limit soliton `eta = -(B^2 h^3 / 4) sech^2(B X / 2)`,
/// the Abel sum of `B^2 h^3 sum_k k (-exp(-B|X|))^k`.
pub fn resum_koebe(b: f64, h: f64, x: f64) -> f64 {
    koebe_profile(b, h, x, Constants::Rederived)
}

/// Closed-form soliton in either constants convention. The published one is
/// `+(B^2 h^3 / 2) sech^2(B X / 2)`.
pub fn koebe_profile(b: f64, h: f64, x: f64, constants: Constants) -> f64 {
    let sech = 1.0 / (0.5 * b * x).cosh();
    let s = b * b * h * h * h;
    match constants {
        Constants::Rederived => -0.25 * s * sech * sech,
        Constants::Paper => 0.5 * s * sech * sech,
    }
}

/// Shallow-limit constants under both conventions, for side-by-side reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShallowConstants {
    pub constants: Constants,
    pub a1: f64,
    pub radius: f64,
    /// Soliton amplitude `eta(0)`.
    pub amplitude: f64,
}

impl ShallowConstants {
    pub fn new(b: f64, h: f64, constants: Constants) -> Self {
        let s = b * b * h * h * h;
        match constants {
            Constants::Rederived => Self {
                constants,
                a1: -s,
                radius: s,
                amplitude: -0.25 * s,
            },
            Constants::Paper => Self {
                constants,
                a1: -2.0 * s,
                radius: 2.0 * s,
                amplitude: 0.5 * s,
            },
        }
    }

    /// `alpha_k` of the convention: `k / R^{k-1}`.
    pub fn alpha(&self, k: usize) -> f64 {
        k as f64 / self.radius.powi(k as i32 - 1)
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn envelope_velocity_values() {
        let a = envelope_velocity(0.1, 1.0).unwrap();
        assert!((a + 0.9983341665).abs() < 1e-10);
        let a = envelope_velocity(PI / 2.0, 1.0).unwrap();
        assert!((a + 2.0 / PI).abs() < 1e-15);
        let a = envelope_velocity(1e-9, 1.0).unwrap();
        assert!((a + 1.0).abs() < 1e-15);
    }

    #[test]
    fn envelope_velocity_rejects_multiples_of_pi() {
        for k in 1..5 {
            assert!(matches!(
                envelope_velocity(k as f64 * PI, 1.0),
                Err(Error::DegenerateVelocity { .. })
            ));
        }
        assert!(envelope_velocity(-1.0, 1.0).is_err());
        assert!(envelope_velocity(1.0, 0.0).is_err());
    }

    #[test]
    fn single_term_series() {
        let s = recurrence_coeffs(1.3, 0.4, 1, 0.7).unwrap();
        assert_eq!(s.coeffs, vec![0.7]);
        assert_eq!(s.order, 1);
        assert_eq!(s.envelope_velocity, envelope_velocity(1.3, 0.4).unwrap());
    }

    #[test]
    fn shallow_second_coefficient() {
        // a_2 / a_1^2 -> 2 / (B^2 h^3) (1 + O(theta^2)) as theta -> 0
        let (b, h) = (1e-3, 1.0);
        let a1 = 0.3 * b * b;
        let s = recurrence_coeffs(b, h, 2, a1).unwrap();
        let ratio = s.coeff(2) / (a1 * a1);
        let expected = 2.0 / (b * b * h * h * h);
        assert!(
            (ratio / expected - 1.0).abs() < 1e-5,
            "{ratio} vs {expected}"
        );
    }

    #[test]
    fn homogeneity_in_a1() {
        let base = recurrence_coeffs(0.8, 0.9, 12, 0.05).unwrap();
        let doubled = recurrence_coeffs(0.8, 0.9, 12, 0.1).unwrap();
        for k in 1..=12 {
            let expected = base.coeff(k) * 2f64.powi(k as i32);
            assert!((doubled.coeff(k) - expected).abs() <= 1e-13 * expected.abs());
        }
    }

    #[test]
    fn shallow_examples() {
        let s = shallow_coeffs(1.0, 1.0, 3, 1.0).unwrap();
        assert_eq!(s.coeff(2), 2.0);
        let s = shallow_coeffs(1.0, 1.0, 3, -1.0).unwrap();
        assert!((s.coeff(3) + 3.0).abs() < 1e-15);
        assert!((shallow_closed_form(1.0, 1.0, 3, -1.0) + 3.0).abs() < 1e-15);
        let z = shallow_coeffs(0.7, 2.0, 10, 0.0).unwrap();
        assert!(z.coeffs.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn closed_form_solves_shallow_recurrence() {
        for &(b, h, a1) in &[(1.0, 0.1, -1e-3), (0.5, 0.3, 2e-4), (2.0, 0.05, -3e-4)] {
            let s = shallow_coeffs(b, h, 60, a1).unwrap();
            for k in 1..=60 {
                let exact = shallow_closed_form(b, h, k, a1);
                assert!(
                    (s.coeff(k) - exact).abs() <= 1e-12 * exact.abs(),
                    "b={b} h={h} k={k}"
                );
            }
        }
    }

    #[test]
    fn shallow_consistency_with_full_recurrence() {
        let (b, h) = (1e-3, 1.0);
        let a1 = -0.5 * b * b * h * h * h;
        let full = recurrence_coeffs(b, h, 20, a1).unwrap();
        let shallow = shallow_coeffs(b, h, 20, a1).unwrap();
        let theta = b * h;
        for k in 1..=20 {
            let rel = (full.coeff(k) - shallow.coeff(k)).abs() / shallow.coeff(k).abs();
            // leading finite-depth correction is ((k - 1) B h / 2)^2
            let lead = ((k as f64 - 1.0) * theta / 2.0).powi(2);
            assert!((rel - lead).abs() <= 1e-3 * lead + 1e-15, "k={k} rel={rel}");
            if k <= 7 {
                assert!(rel < 1e-5);
            }
        }
    }

    #[test]
    fn shallow_match_gives_minus_b2h3() {
        for &(b, h) in &[(1.0, 0.1), (0.3, 0.2), (2.0, 0.05)] {
            let (series, m) =
                matched_series(b, h, 200, &ShallowRecurrence, &MatchOptions::default()).unwrap();
            let expected = -b * b * h * h * h;
            assert!(
                (m.a1 / expected - 1.0).abs() < 1e-10,
                "{} vs {expected}",
                m.a1
            );
            assert!(series.ledger.a1_matched);
            assert_eq!(series.ledger.scheme, "shallow");
        }
    }

    #[test]
    fn shallow_match_scales_as_b2h3() {
        let h = 0.2;
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=10 {
            let b = 0.1 * 10f64.powf(i as f64 / 10.0);
            let m = match_a1(b, h, 64, &ShallowRecurrence, &MatchOptions::default()).unwrap();
            if let Some((b0, a0)) = prev {
                let predicted = a0 * (b / b0).powi(2);
                assert!((m.a1 / predicted - 1.0).abs() < 1e-9);
            }
            prev = Some((b, m.a1));
        }
    }

    #[test]
    fn single_term_has_no_matching_root() {
        let err = match_a1(1.0, 0.1, 1, &FullRecurrence, &MatchOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NoMatchingRoot { .. }), "{err:?}");
    }

    #[test]
    fn koebe_profile_values() {
        assert!((resum_koebe(1.0, 1.0, 0.0) + 0.25).abs() < 1e-16);
        let sech1 = 1.0 / 1f64.cosh();
        assert!((resum_koebe(1.0, 1.0, 2.0) + 0.25 * sech1 * sech1).abs() < 1e-16);
        assert!((resum_koebe(1.0, 1.0, 2.0) + 0.104994).abs() < 1e-6);
        assert!(resum_koebe(1.0, 1.0, 80.0).abs() < 1e-30);
        assert_eq!(resum_koebe(1.3, 0.2, 1.7), resum_koebe(1.3, 0.2, -1.7));
        assert!((koebe_profile(1.0, 1.0, 0.0, Constants::Paper) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn koebe_profile_solves_steady_shallow_kdv() {
        // (A+1) eta' + (2/h) eta eta' - (h^2/6) eta''' = 0 with
        // A = -1 + (Bh)^2/6, checked by central differences.
        let (b, h) = (1.0, 0.1);
        let a = -1.0 + (b * h) * (b * h) / 6.0;
        let d = 1e-2;
        for &x in &[-3.0, -0.7, 0.0, 0.4, 1.5, 4.0] {
            let f = |y: f64| resum_koebe(b, h, y);
            let d1 =
                (f(x - 2.0 * d) - 8.0 * f(x - d) + 8.0 * f(x + d) - f(x + 2.0 * d)) / (12.0 * d);
            let d3 = (f(x - 3.0 * d) - 8.0 * f(x - 2.0 * d) + 13.0 * f(x - d) - 13.0 * f(x + d)
                + 8.0 * f(x + 2.0 * d)
                - f(x + 3.0 * d))
                / (8.0 * d * d * d);
            let terms = [(a + 1.0) * d1, 2.0 / h * f(x) * d1, -h * h / 6.0 * d3];
            let scale = terms.iter().map(|t| t.abs()).fold(1e-30, f64::max);
            let res: f64 = terms.iter().sum();
            assert!(
                res.abs() < 1e-6 * scale.max(1e-8),
                "x={x} res={res} scale={scale}"
            );
        }
    }

    #[test]
    fn constants_conventions_differ_by_two() {
        let r = ShallowConstants::new(1.0, 0.5, Constants::Rederived);
        let p = ShallowConstants::new(1.0, 0.5, Constants::Paper);
        assert_eq!(p.a1, 2.0 * r.a1);
        assert_eq!(p.radius, 2.0 * r.radius);
        assert_eq!(p.amplitude, -2.0 * r.amplitude);
        assert!((r.alpha(3) - 3.0 / (0.125 * 0.125)).abs() < 1e-10);
    }
}
