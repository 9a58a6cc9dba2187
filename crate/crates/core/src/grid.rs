use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Formats a float with 17 significant digits, the fixed width used by every
/// CSV artifact.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Reference frame of a sampled profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Frame {
    Lab,
    CoMoving,
}

/// Surface elevation sampled on a strictly increasing 1-D grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridProfile {
    xs: Vec<f64>,
    values: Vec<f64>,
    pub frame: Frame,
    pub time: f64,
}

impl GridProfile {
    pub fn new(xs: Vec<f64>, values: Vec<f64>, frame: Frame, time: f64) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::InvalidGrid(format!(
                "{} positions but {} values",
                xs.len(),
                values.len()
            )));
        }
        if let Some(i) = xs
            .windows(2)
            .position(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
        {
            return Err(Error::InvalidGrid(format!(
                "positions not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self {
            xs,
            values,
            frame,
            time,
        })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// CSV with header `x,eta`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,eta\n");
        for (x, e) in self.xs.iter().zip(&self.values) {
            writeln!(out, "{},{}", fmt_f64(*x), fmt_f64(*e)).unwrap();
        }
        out
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n).map(|i| lo + step * i as f64).collect()
        }
    }
}

/// Parses a `lo:hi:n` range specification.
pub fn parse_range(spec: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Parse(format!("expected `lo:hi:n`, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0 || !(lo.is_finite() && hi.is_finite()) || (n > 1 && hi <= lo) {
        return Err(bad());
    }
    Ok((lo, hi, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let g = GridProfile::new(vec![-1.0, 0.5], vec![0.25, -3.0], Frame::Lab, 0.0).unwrap();
        let csv = g.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,eta"));
        assert_eq!(
            lines.next(),
            Some("-1.0000000000000000e0,2.5000000000000000e-1")
        );
        assert_eq!(lines.count(), 1);
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -std::f64::consts::E, 1e-300, 6.02e23] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn rejects_unsorted_or_mismatched() {
        assert!(GridProfile::new(vec![0.0, 0.0], vec![1.0, 1.0], Frame::Lab, 0.0).is_err());
        assert!(GridProfile::new(vec![0.0, 1.0], vec![1.0], Frame::Lab, 0.0).is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("-10:10:2001").unwrap(), (-10.0, 10.0, 2001));
        assert!(parse_range("1:0:5").is_err());
        assert!(parse_range("1:2").is_err());
        let xs = linspace(-10.0, 10.0, 2001);
        assert_eq!(xs[1000], 0.0);
        assert_eq!(xs[2000], 10.0);
    }
}
