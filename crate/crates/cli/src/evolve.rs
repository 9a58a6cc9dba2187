use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use serde::{Deserialize, Serialize};

use gkdv_core::evolve::{rhs, soliton_field, Diagnostics, FilterConfig};
use gkdv_core::{integrate, make_params, EvolveConfig, SpectralField, SpectralGrid};

use crate::error::{CliError, Result};
use crate::output::{ensure_dir, load_config, write_json, write_text};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveRunConfig {
    pub rhs: String,
    /// `soliton` (shallow-limit profile centred in the domain) or `mode`
    /// (`amplitude * cos(2 pi mode x / domain)`).
    pub init: String,
    #[serde(rename = "B")]
    pub b: f64,
    pub amplitude: f64,
    pub mode: usize,
    pub h: f64,
    pub g: f64,
    pub domain: f64,
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub cfl: f64,
    pub dealias: bool,
    pub filter: FilterConfig,
    pub snapshot_every: usize,
    pub out: Option<PathBuf>,
}

impl Default for EvolveRunConfig {
    fn default() -> Self {
        Self {
            rhs: "gkdv".into(),
            init: "soliton".into(),
            b: 1.0,
            amplitude: 1e-4,
            mode: 1,
            h: 0.1,
            g: 9.81,
            domain: 40.0,
            n: 1024,
            dt: 1e-3,
            t_end: 10.0,
            cfl: 0.5,
            dealias: true,
            filter: FilterConfig::default(),
            snapshot_every: 1000,
            out: None,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Right-hand side: gkdv | kdv.
    #[arg(long)]
    rhs: Option<String>,
    /// Initial data: soliton | mode.
    #[arg(long)]
    init: Option<String>,
    /// Soliton decay rate B.
    #[arg(long = "B")]
    b: Option<f64>,
    /// Mode amplitude.
    #[arg(long, allow_hyphen_values = true)]
    amplitude: Option<f64>,
    /// Mode number on the periodic domain.
    #[arg(long)]
    mode: Option<usize>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    /// Periodic domain length.
    #[arg(long)]
    domain: Option<f64>,
    /// Grid points (power of two).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Fraction of the RK4 stability bound dt may use.
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    no_dealias: bool,
    #[arg(long)]
    no_filter: bool,
    #[arg(long)]
    snapshot_every: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

impl EvolveArgs {
    pub fn resolve(&self) -> Result<EvolveRunConfig> {
        let mut c: EvolveRunConfig = load_config(self.config.as_deref())?;
        if let Some(v) = &self.rhs {
            c.rhs = v.clone();
        }
        if let Some(v) = &self.init {
            c.init = v.clone();
        }
        macro_rules! take {
            ($($field:ident <- $arg:ident),*) => {
                $(if let Some(v) = self.$arg { c.$field = v; })*
            };
        }
        take!(b <- b, amplitude <- amplitude, mode <- mode, h <- h, g <- g, domain <- domain,
              n <- n, dt <- dt, t_end <- t_end, cfl <- cfl, snapshot_every <- snapshot_every);
        if self.no_dealias {
            c.dealias = false;
        }
        if self.no_filter {
            c.filter.enabled = false;
        }
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolveMeta {
    pub config: EvolveRunConfig,
    pub c0: f64,
    pub diagnostics: Diagnostics,
    pub snapshots: usize,
}

/// Spectrum magnitudes at the moment a run went non-finite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstabilityDump {
    pub time: f64,
    pub index: usize,
    pub spectrum: Vec<f64>,
}

pub fn run(config: &EvolveRunConfig) -> Result<EvolveMeta> {
    let registry = rhs::registry();
    let rhs = registry.create(&config.rhs)?;
    let params = make_params(config.h, config.g, 1000.0, 0.0)?;
    let c0 = params.c0();
    let grid = Arc::new(SpectralGrid::new(config.domain, config.n, config.h)?);
    let field = match config.init.as_str() {
        "soliton" => soliton_field(grid, config.b, config.domain / 2.0),
        "mode" => {
            let k = 2.0 * PI * config.mode as f64 / config.domain;
            let a = config.amplitude;
            SpectralField::from_fn(grid, |x| a * (k * x).cos())
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown initial data `{other}` (available: soliton, mode)"
            )))
        }
    };
    let evolve = EvolveConfig {
        dt: config.dt,
        t_end: config.t_end,
        filter: config.filter,
        dealias: config.dealias,
        cfl: config.cfl,
        snapshot_every: config.snapshot_every,
    };
    let result = integrate(&field, c0, &evolve, rhs.as_ref());
    if let (
        Err(gkdv_core::Error::Instability {
            time,
            index,
            spectrum,
            ..
        }),
        Some(dir),
    ) = (&result, &config.out)
    {
        ensure_dir(dir)?;
        write_json(
            &dir.join("instability.json"),
            &InstabilityDump {
                time: *time,
                index: *index,
                spectrum: spectrum.clone(),
            },
        )?;
    }
    let traj = result?;
    let meta = EvolveMeta {
        config: config.clone(),
        c0,
        diagnostics: traj.diagnostics.clone(),
        snapshots: traj.snapshots.len(),
    };
    if let Some(dir) = &config.out {
        ensure_dir(dir)?;
        write_text(&dir.join("trajectory.csv"), &traj.to_long_csv())?;
        write_json(&dir.join("meta.json"), &meta)?;
    }
    Ok(meta)
}

pub fn summary(m: &EvolveMeta) -> String {
    let d = &m.diagnostics;
    format!(
        "rhs = {}, init = {}, c0 = {:.6}\nsteps = {}, dt = {:.6e} (stability bound {:.6e})\nmass: initial {:.6e}, final {:.6e}, max relative drift {:.3e}\nsnapshots = {}\n",
        d.rhs, m.config.init, m.c0, d.steps, d.dt, d.stability_bound, d.mass_initial, d.mass_final,
        d.max_mass_drift, m.snapshots
    )
}
