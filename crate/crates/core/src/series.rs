use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};

/// Which set of shallow-limit constants a series or report follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Constants {
    /// Values re-derived from the steady recurrence (`a1 = -B^2 h^3`, ...).
    #[default]
    Rederived,
    /// The published `2 B^2 h^3` family, reported for comparison only.
    Paper,
}

impl Constants {
    pub fn as_str(&self) -> &'static str {
        match self {
            Constants::Rederived => "rederived",
            Constants::Paper => "paper",
        }
    }
}

impl std::str::FromStr for Constants {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rederived" => Ok(Constants::Rederived),
            "paper" => Ok(Constants::Paper),
            other => Err(Error::Parse(format!(
                "constants convention must be `rederived` or `paper`, got `{other}`"
            ))),
        }
    }
}

/// Provenance block carried in the series JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ledger {
    pub constants: Constants,
    /// Name of the coefficient scheme that produced the series.
    pub scheme: String,
    /// Whether `a1` came from the smoothness matching or was supplied.
    pub a1_matched: bool,
}

impl Default for Ledger {
    fn default() -> Self {
        Self {
            constants: Constants::Rederived,
            scheme: "full".to_string(),
            a1_matched: false,
        }
    }
}

/// Truncated steady-wave expansion `eta(X) = sum_{k=1..K} a_k exp(-k B |X|)`.
///
/// Coefficients are stored unnormalized; the normalized `alpha_k = a_k / a1^k`
/// are computed on demand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyWaveSeries {
    #[serde(rename = "B")]
    pub decay_rate: f64,
    #[serde(rename = "h")]
    pub depth: f64,
    #[serde(rename = "A")]
    pub envelope_velocity: f64,
    #[serde(rename = "K")]
    pub order: usize,
    /// `a[0]` is `a_1`.
    #[serde(rename = "a")]
    pub coeffs: Vec<f64>,
    #[serde(default)]
    pub ledger: Ledger,
}

impl SteadyWaveSeries {
    pub fn new(
        decay_rate: f64,
        depth: f64,
        envelope_velocity: f64,
        coeffs: Vec<f64>,
        ledger: Ledger,
    ) -> Result<Self> {
        let series = Self {
            decay_rate,
            depth,
            envelope_velocity,
            order: coeffs.len(),
            coeffs,
            ledger,
        };
        series.validate()?;
        Ok(series)
    }

    pub fn validate(&self) -> Result<()> {
        positive("B", self.decay_rate)?;
        positive("h", self.depth)?;
        if !self.envelope_velocity.is_finite() {
            return Err(Error::InvalidParameter {
                name: "A",
                value: self.envelope_velocity,
                reason: "must be finite",
            });
        }
        if self.coeffs.is_empty() || self.order != self.coeffs.len() {
            return Err(Error::InvalidParameter {
                name: "K",
                value: self.order as f64,
                reason: "must be >= 1 and equal the coefficient count",
            });
        }
        if let Some(bad) = self.coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "a_k",
                value: *bad,
                reason: "coefficients must be finite",
            });
        }
        Ok(())
    }

    pub fn b(&self) -> f64 {
        self.decay_rate
    }

    pub fn h(&self) -> f64 {
        self.depth
    }

    /// The phase `B*h`.
    pub fn theta(&self) -> f64 {
        self.decay_rate * self.depth
    }

    pub fn a1(&self) -> f64 {
        self.coeffs[0]
    }

    /// `a_k` for `1 <= k <= K`, zero beyond the truncation.
    pub fn coeff(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.coeffs.get(k - 1).copied().unwrap_or(0.0)
        }
    }

    /// `alpha_k = a_k / a1^k`. Overflows for small `a1` at large `k`; prefer
    /// [`Self::log_abs_alpha`] for diagnostics.
    pub fn alpha(&self, k: usize) -> f64 {
        self.coeff(k) / self.a1().powi(k as i32)
    }

    /// `ln |alpha_k|`, or `-inf` for a vanishing coefficient.
    pub fn log_abs_alpha(&self, k: usize) -> f64 {
        let a = self.coeff(k).abs();
        if a == 0.0 {
            f64::NEG_INFINITY
        } else {
            a.ln() - k as f64 * self.a1().abs().ln()
        }
    }

    /// Partial sum `sum a_k v^k` by Horner's rule.
    pub fn eval_v(&self, v: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &a| (acc + a) * v)
    }

    /// Coefficients of the translated profile `eta(x + A c0 t)`, i.e.
    /// `a_k exp(-k B A c0 t)`.
    pub fn translated(&self, c0: f64, t: f64) -> Self {
        let rate = -self.decay_rate * self.envelope_velocity * c0 * t;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * ((i + 1) as f64 * rate).exp())
            .collect();
        Self {
            coeffs,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("series serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let series: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        series.validate()?;
        Ok(series)
    }
}
