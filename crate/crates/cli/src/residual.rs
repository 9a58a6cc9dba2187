use std::fs;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use gkdv_core::residual::series_as_power_series;
use gkdv_core::{q_residual, scheme_residual, steady_residual, QDeformation, SteadyWaveSeries};

use crate::error::{io_err, CliError, Result};

#[derive(Debug, Args)]
pub struct ResidualArgs {
    /// Series JSON written by `steady`.
    #[arg(long)]
    from: PathBuf,
    /// Largest admissible residual relative to the largest term, orders k <= K.
    #[arg(long, default_value_t = 1e-10)]
    threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualSummary {
    pub from: PathBuf,
    #[serde(rename = "K")]
    pub order: usize,
    /// Scheme recorded in the series; selects the equation checked.
    pub scheme: String,
    pub threshold: f64,
    /// `max_{k<=K} |r_k| / (largest term in r_k)`.
    pub max_relative: f64,
    pub max_abs: f64,
    /// `max_k |r_k| / (largest term)` over the truncation tail `K < k <= 2K`.
    pub tail_relative: f64,
    /// Largest coefficientwise gap between the q-form and direct full-equation
    /// residuals,
    /// relative to the term scale.
    pub q_form_gap: f64,
    pub pass: bool,
}

pub fn run(args: &ResidualArgs) -> Result<ResidualSummary> {
    let text = fs::read_to_string(&args.from).map_err(io_err(&args.from))?;
    let series = SteadyWaveSeries::from_json(&text)?;
    let direct = scheme_residual(&series);
    let full = steady_residual(&series);
    let k = series.order;
    let q = q_residual(
        &series_as_power_series(&series),
        QDeformation::from_wave(series.decay_rate, series.depth),
        series.decay_rate,
        series.depth,
        series.envelope_velocity,
    )?;
    let q_form_gap = q
        .values
        .iter()
        .zip(&full.values)
        .zip(&full.scales)
        .filter(|(_, s)| **s > 0.0)
        .map(|((a, b), s)| (a - b).abs() / s)
        .fold(0.0, f64::max);
    let tail_relative = direct
        .values
        .iter()
        .zip(&direct.scales)
        .skip(k)
        .map(|(r, s)| if *s > 0.0 { r.abs() / s } else { r.abs() })
        .fold(0.0, f64::max);
    let max_relative = direct.max_relative_through(k);
    Ok(ResidualSummary {
        from: args.from.clone(),
        order: k,
        scheme: series.ledger.scheme.clone(),
        threshold: args.threshold,
        max_relative,
        max_abs: direct.max_abs_through(k),
        tail_relative,
        q_form_gap,
        pass: max_relative <= args.threshold,
    })
}

pub fn check(s: &ResidualSummary) -> Result<()> {
    if s.pass {
        Ok(())
    } else {
        Err(CliError::ThresholdExceeded {
            value: s.max_relative,
            threshold: s.threshold,
        })
    }
}

pub fn summary(s: &ResidualSummary) -> String {
    format!(
        "K = {}, scheme = {}\nmax relative residual (k <= K): {:.3e} (threshold {:.1e})\nmax absolute residual (k <= K): {:.3e}\ntruncation tail (K < k <= 2K): {:.3e}\nq-form gap: {:.3e}\n{}\n",
        s.order,
        s.scheme,
        s.max_relative,
        s.threshold,
        s.max_abs,
        s.tail_relative,
        s.q_form_gap,
        if s.pass { "PASS" } else { "FAIL" }
    )
}
