use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use gkdv_core::grid::{fmt_f64, linspace, parse_range};
use gkdv_core::steady::{
    self, koebe_profile, resum, scheme, KoebeReport, MatchResult, RadiusEstimate, SampleOptions,
    ShallowConstants,
};
use gkdv_core::{steady_residual, Constants, MatchOptions};

use crate::error::{CliError, Result};
use crate::output::{ensure_dir, load_config, write_json, write_text};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SteadyConfig {
    #[serde(rename = "B")]
    pub b: f64,
    pub h: f64,
    #[serde(rename = "K")]
    pub order: usize,
    pub scheme: String,
    pub resummation: String,
    /// `lo:hi:n` in `X`.
    pub grid: String,
    pub constants: Constants,
    /// Fixed `a1`; skips the smoothness matching when set.
    pub a1: Option<f64>,
    pub out: Option<PathBuf>,
}

impl Default for SteadyConfig {
    fn default() -> Self {
        Self {
            b: 1.0,
            h: 0.1,
            order: 200,
            scheme: "full".into(),
            resummation: "pade".into(),
            grid: "-10:10:2001".into(),
            constants: Constants::Rederived,
            a1: None,
            out: None,
        }
    }
}

#[derive(Debug, Args)]
pub struct SteadyArgs {
    /// Decay rate B of the steady profile.
    #[arg(long = "B")]
    b: Option<f64>,
    /// Layer depth h.
    #[arg(long)]
    h: Option<f64>,
    /// Truncation order K.
    #[arg(long = "K")]
    order: Option<usize>,
    /// Coefficient scheme: full | shallow.
    #[arg(long)]
    scheme: Option<String>,
    /// Profile resummation: pade | partial-sum.
    #[arg(long)]
    resummation: Option<String>,
    /// Sampling grid lo:hi:n.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Shallow-limit constants convention: rederived | paper.
    #[arg(long)]
    constants: Option<Constants>,
    /// Use this a1 instead of matching it.
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file (flags take precedence).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Parameter sweep KEY=lo:hi:n over B or h, one sub-directory per point.
    #[arg(long)]
    sweep: Option<String>,
}

impl SteadyArgs {
    pub fn resolve(&self) -> Result<SteadyConfig> {
        let mut c: SteadyConfig = load_config(self.config.as_deref())?;
        if let Some(v) = self.b {
            c.b = v;
        }
        if let Some(v) = self.h {
            c.h = v;
        }
        if let Some(v) = self.order {
            c.order = v;
        }
        if let Some(v) = &self.scheme {
            c.scheme = v.clone();
        }
        if let Some(v) = &self.resummation {
            c.resummation = v.clone();
        }
        if let Some(v) = &self.grid {
            c.grid = v.clone();
        }
        if let Some(v) = self.constants {
            c.constants = v;
        }
        if self.a1.is_some() {
            c.a1 = self.a1;
        }
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        Ok(c)
    }

    pub fn sweep(&self) -> Option<&str> {
        self.sweep.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyReport {
    pub config: SteadyConfig,
    pub a1: f64,
    pub envelope_velocity: f64,
    #[serde(rename = "match")]
    pub matching: Option<MatchResult>,
    pub radius: Option<RadiusEstimate>,
    pub radius_error: Option<String>,
    pub koebe: KoebeReport,
    /// Selected convention first, the other one second.
    pub shallow_constants: [ShallowConstants; 2],
    /// `max_k |r_k| / (largest term)` for `k <= K`.
    pub residual: f64,
}

pub fn run(config: &SteadyConfig) -> Result<SteadyReport> {
    let schemes = scheme::registry();
    let scheme = schemes.create(&config.scheme)?;
    let resummations = resum::registry();
    let resummation = resummations.create(&config.resummation)?;
    let (lo, hi, n) = parse_range(&config.grid)?;

    let (mut series, matching) = match config.a1 {
        Some(a1) => (
            steady::build_series(scheme.as_ref(), config.b, config.h, config.order, a1, false)?,
            None,
        ),
        None => {
            let (s, m) = steady::matched_series(
                config.b,
                config.h,
                config.order,
                scheme.as_ref(),
                &MatchOptions::default(),
            )?;
            (s, Some(m))
        }
    };
    series.ledger.constants = config.constants;

    let (radius, radius_error) = match steady::radius_estimate(&series) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let koebe = steady::koebe_bound_check(&series, None);
    let other = match config.constants {
        Constants::Rederived => Constants::Paper,
        Constants::Paper => Constants::Rederived,
    };
    let report = SteadyReport {
        config: config.clone(),
        a1: series.a1(),
        envelope_velocity: series.envelope_velocity,
        matching,
        radius,
        radius_error,
        koebe,
        shallow_constants: [
            ShallowConstants::new(config.b, config.h, config.constants),
            ShallowConstants::new(config.b, config.h, other),
        ],
        residual: steady_residual(&series).max_relative_through(series.order),
    };

    if let Some(dir) = &config.out {
        ensure_dir(dir)?;
        let xs = linspace(lo, hi, n);
        let opts = SampleOptions {
            x_min: None,
            resummation: Some(resummation.as_ref()),
        };
        let profile = steady::sample_profile(&series, &xs, &opts)?;
        write_text(&dir.join("series.json"), &(series.to_json() + "\n"))?;
        write_text(&dir.join("profile.csv"), &profile_csv(&profile, config))?;
        write_json(&dir.join("report.json"), &report)?;
    }
    Ok(report)
}

/// `x,eta,closed_form`, the last column being the shallow-limit soliton in the
/// selected constants convention.
fn profile_csv(profile: &gkdv_core::GridProfile, config: &SteadyConfig) -> String {
    let mut out = String::from("x,eta,closed_form\n");
    for (x, e) in profile.xs().iter().zip(profile.values()) {
        let closed = koebe_profile(config.b, config.h, *x, config.constants);
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(*x),
            fmt_f64(*e),
            fmt_f64(closed)
        ));
    }
    out
}

/// Runs one steady solve per sweep point on its own thread, writing into
/// `out/sweep_NNN`.
pub fn run_sweep(base: &SteadyConfig, spec: &str) -> Result<Vec<SteadyReport>> {
    let (key, range) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Input(format!("sweep must be KEY=lo:hi:n, got `{spec}`")))?;
    let (lo, hi, n) = parse_range(range)?;
    let out = base
        .out
        .clone()
        .ok_or_else(|| CliError::Input("--sweep needs --out".into()))?;
    let configs: Vec<SteadyConfig> = linspace(lo, hi, n)
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let mut c = base.clone();
            match key {
                "B" => c.b = v,
                "h" => c.h = v,
                other => {
                    return Err(CliError::Input(format!(
                        "sweep key must be B or h, got `{other}`"
                    )))
                }
            }
            c.out = Some(sweep_dir(&out, i));
            Ok(c)
        })
        .collect::<Result<_>>()?;
    std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| scope.spawn(move || run(c)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}

fn sweep_dir(out: &Path, i: usize) -> PathBuf {
    out.join(format!("sweep_{i:03}"))
}

pub fn summary(r: &SteadyReport) -> String {
    let mut s = format!(
        "B = {}, h = {}, K = {}, scheme = {}\nA = {:.12}\na1 = {:.12e}{}\n",
        r.config.b,
        r.config.h,
        r.config.order,
        r.config.scheme,
        r.envelope_velocity,
        r.a1,
        if r.matching.is_some() {
            " (matched)"
        } else {
            " (given)"
        },
    );
    match (&r.radius, &r.radius_error) {
        (Some(rad), _) => s.push_str(&format!(
            "radius: cauchy-hadamard {:.6e}, fitted {:.6e}\n",
            rad.cauchy_hadamard, rad.fitted
        )),
        (None, Some(e)) => s.push_str(&format!("radius: {e}\n")),
        _ => {}
    }
    s.push_str(&format!(
        "koebe: max |c_k|/k = {:.6} at k = {}\n",
        r.koebe.max_ratio, r.koebe.argmax
    ));
    for c in &r.shallow_constants {
        s.push_str(&format!(
            "shallow constants ({}): a1 = {:.6e}, R = {:.6e}, amplitude = {:.6e}\n",
            c.constants.as_str(),
            c.a1,
            c.radius,
            c.amplitude
        ));
    }
    s.push_str(&format!("residual (k <= K): {:.3e}\n", r.residual));
    s
}
