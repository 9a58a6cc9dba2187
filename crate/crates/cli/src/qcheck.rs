use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gkdv_core::qcalc::exact::{Laurent, QPoly};
use gkdv_core::qcalc::ComplexSeries;
use gkdv_core::{q_bracket, q_derivative, shift, sin_difference, PowerSeries, QDeformation};

use crate::error::{CliError, Result};

#[derive(Debug, Args)]
pub struct QcheckArgs {
    /// Random cases per identity.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub trials: usize,
    /// Largest deviation seen; exact identities report 0 or 1 (mismatch).
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn result(name: &'static str, trials: usize, max_error: f64, tolerance: f64) -> IdentityResult {
    IdentityResult {
        name,
        trials,
        max_error,
        tolerance,
        pass: max_error <= tolerance,
    }
}

fn real_series(rng: &mut ChaCha8Rng) -> PowerSeries {
    let n = rng.random_range(1..16);
    PowerSeries::new((0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
}

fn int_poly(rng: &mut ChaCha8Rng) -> QPoly {
    let n = rng.random_range(1..10);
    let c: Vec<i64> = (0..n).map(|_| rng.random_range(-20..20)).collect();
    QPoly::from_ints(&c)
}

fn theta(rng: &mut ChaCha8Rng) -> QDeformation {
    QDeformation::new(rng.random_range(0.01..3.1))
}

fn max_gap(a: &ComplexSeries, b: &ComplexSeries) -> f64 {
    let len = a.coeffs.len().max(b.coeffs.len());
    (0..len)
        .map(|n| (a.coeff(n) - b.coeff(n)).norm())
        .fold(0.0, f64::max)
}

pub fn run(args: &QcheckArgs) -> Vec<IdentityResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let t = args.trials;
    let mut out = Vec::new();

    let mut err: f64 = 0.0;
    for _ in 0..t {
        let d = theta(&mut rng);
        let n = rng.random_range(1..24);
        let exact = Laurent::q_integer(n).eval(d.theta);
        let float = q_bracket(n, d).unwrap_or(f64::NAN);
        err = err.max((exact.re - float).abs() + exact.im.abs());
    }
    out.push(result("q-bracket = sin(n theta)/sin(theta)", t, err, 1e-10));

    let mut mismatches = 0;
    for _ in 0..t {
        let (f, g) = (int_poly(&mut rng), int_poly(&mut rng));
        let lhs = f.mul(&g).d_q();
        let rhs = f.shift(1).mul(&g.d_q()).add(&g.shift(-1).mul(&f.d_q()));
        mismatches += usize::from(lhs != rhs);
    }
    out.push(result(
        "q-Leibniz (exact, integer polynomials)",
        t,
        mismatches as f64,
        0.0,
    ));

    let mut mismatches = 0;
    for _ in 0..t {
        let f = int_poly(&mut rng);
        let lhs = f.mul(&f).d_q();
        let rhs = f.shift(1).add(&f.shift(-1)).mul(&f.d_q());
        mismatches += usize::from(lhs != rhs);
    }
    out.push(result(
        "D_q(f^2) factorization (exact)",
        t,
        mismatches as f64,
        0.0,
    ));

    let mut err: f64 = 0.0;
    for _ in 0..t {
        let d = theta(&mut rng);
        let (f, g) = (real_series(&mut rng), real_series(&mut rng));
        let (Ok(dfg), Ok(df), Ok(dg)) = (
            q_derivative(&(&f * &g), d),
            q_derivative(&f, d),
            q_derivative(&g, d),
        ) else {
            err = f64::INFINITY;
            continue;
        };
        let rhs = shift(&f, d, 1)
            .mul(&ComplexSeries::from_real(&dg))
            .add(&shift(&g, d, -1).mul(&ComplexSeries::from_real(&df)));
        err = err.max(max_gap(&ComplexSeries::from_real(&dfg), &rhs));
    }
    out.push(result("q-Leibniz (floating point)", t, err, 1e-12));

    let mut err: f64 = 0.0;
    for _ in 0..t {
        let d = theta(&mut rng);
        let f = real_series(&mut rng);
        let Ok(df) = q_derivative(&f, d) else {
            err = f64::INFINITY;
            continue;
        };
        let lhs = sin_difference(&f, d);
        let rhs = df.times_v().scale(d.theta.sin());
        err = err.max(max_gap(
            &ComplexSeries::from_real(&lhs),
            &ComplexSeries::from_real(&rhs),
        ));
    }
    out.push(result("sin-difference = sin(theta) v D_q", t, err, 1e-13));

    let mut err: f64 = 0.0;
    for _ in 0..t {
        let d = theta(&mut rng);
        let f = real_series(&mut rng);
        let back = shift(&f, d, 1).shift(d, -1);
        err = err.max(max_gap(&back, &ComplexSeries::from_real(&f)));
    }
    out.push(result("shift round trip", t, err, 1e-14));

    let mut err: f64 = 0.0;
    for _ in 0..t {
        let f = real_series(&mut rng);
        let small = QDeformation::new(1e-4);
        let Ok(dq) = q_derivative(&f, small) else {
            err = f64::INFINITY;
            continue;
        };
        let d = f.derivative();
        let gap = (0..d.len())
            .map(|n| (dq.coeff(n) - d.coeff(n)).abs())
            .fold(0.0, f64::max);
        err = err.max(gap);
    }
    // [n]_q - n = O(n^3 theta^2) for n < 16
    out.push(result("classical limit theta = 1e-4", t, err, 1e-4));

    out
}

pub fn check(results: &[IdentityResult]) -> Result<()> {
    let failed = results.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::IdentityFailure { failed })
    }
}

pub fn table(results: &[IdentityResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(8);
    let mut s = format!(
        "{:<width$}  {:>6}  {:>10}  {:>9}  result\n",
        "identity", "trials", "max error", "tolerance"
    );
    for r in results {
        s.push_str(&format!(
            "{:<width$}  {:>6}  {:>10.3e}  {:>9.1e}  {}\n",
            r.name,
            r.trials,
            r.max_error,
            r.tolerance,
            if r.pass { "PASS" } else { "FAIL" }
        ));
    }
    s
}
