use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};

use gkdv_core::grid::{fmt_f64, linspace, parse_range};
use gkdv_core::{dispersion, make_params, DispersionInput};

use crate::error::Result;
use crate::output::{load_config, write_text};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DispersionConfig {
    pub h: f64,
    pub g: f64,
    pub rho: f64,
    pub sigma: f64,
    /// `lo:hi:n` in wavenumber.
    pub k: String,
    pub out: Option<PathBuf>,
}

impl Default for DispersionConfig {
    fn default() -> Self {
        Self {
            h: 1.0,
            g: 9.81,
            rho: 1000.0,
            sigma: 0.0,
            k: "0.01:10:1000".into(),
            out: None,
        }
    }
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    /// Surface-pressure coefficient.
    #[arg(long)]
    sigma: Option<f64>,
    /// Wavenumbers lo:hi:n.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Output CSV file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

impl DispersionArgs {
    pub fn resolve(&self) -> Result<DispersionConfig> {
        let mut c: DispersionConfig = load_config(self.config.as_deref())?;
        if let Some(v) = self.h {
            c.h = v;
        }
        if let Some(v) = self.g {
            c.g = v;
        }
        if let Some(v) = self.rho {
            c.rho = v;
        }
        if let Some(v) = self.sigma {
            c.sigma = v;
        }
        if let Some(v) = &self.k {
            c.k = v.clone();
        }
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionTable {
    pub config: DispersionConfig,
    pub c0: f64,
    pub k: Vec<f64>,
    pub omega2: Vec<f64>,
}

pub fn run(config: &DispersionConfig) -> Result<DispersionTable> {
    let params = make_params(config.h, config.g, config.rho, config.sigma)?;
    let (lo, hi, n) = parse_range(&config.k)?;
    let k = linspace(lo, hi, n);
    let omega2 = k
        .iter()
        .map(|&k| DispersionInput::new(k, params).map(|inp| dispersion(&inp)))
        .collect::<gkdv_core::Result<Vec<f64>>>()?;
    let table = DispersionTable {
        config: config.clone(),
        c0: params.c0(),
        k,
        omega2,
    };
    if let Some(path) = &config.out {
        write_text(path, &csv(&table))?;
    }
    Ok(table)
}

pub fn csv(t: &DispersionTable) -> String {
    let mut out = String::from("k,omega2\n");
    for (k, w) in t.k.iter().zip(&t.omega2) {
        out.push_str(&format!("{},{}\n", fmt_f64(*k), fmt_f64(*w)));
    }
    out
}
