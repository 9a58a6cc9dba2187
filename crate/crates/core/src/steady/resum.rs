use crate::error::{Error, Result};
use crate::grid::{Frame, GridProfile};
use crate::registry::Registry;
use crate::series::SteadyWaveSeries;

use super::pade;

pub type Evaluator = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A way of summing the truncated series `sum a_k v^k` at `v = exp(-B|X|)`.
pub trait Resummation: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether the evaluator is trusted up to the crest `v = 1`.
    fn covers_crest(&self) -> bool;

    /// Returns `v -> eta`.
    fn prepare(&self, series: &SteadyWaveSeries) -> Result<Evaluator>;
}

/// Raw partial sum (Horner).
#[derive(Debug, Default, Clone, Copy)]
pub struct PartialSum;

impl Resummation for PartialSum {
    fn name(&self) -> &'static str {
        "partial-sum"
    }

    fn covers_crest(&self) -> bool {
        false
    }

    fn prepare(&self, series: &SteadyWaveSeries) -> Result<Evaluator> {
        let s = series.clone();
        Ok(Box::new(move |v| s.eval_v(v)))
    }
}

/// Diagonal Padé approximant in `v`.
#[derive(Debug, Clone, Copy)]
pub struct PadeResummation {
    pub max_order: usize,
}

impl Default for PadeResummation {
    fn default() -> Self {
        Self { max_order: 40 }
    }
}

impl Resummation for PadeResummation {
    fn name(&self) -> &'static str {
        "pade"
    }

    fn covers_crest(&self) -> bool {
        true
    }

    fn prepare(&self, series: &SteadyWaveSeries) -> Result<Evaluator> {
        let mut c = Vec::with_capacity(series.order + 1);
        c.push(0.0);
        c.extend_from_slice(&series.coeffs);
        let approx = pade::diagonal(&c, self.max_order);
        Ok(Box::new(move |v| approx.eval(v)))
    }
}

pub fn registry() -> Registry<dyn Resummation> {
    let mut r: Registry<dyn Resummation> = Registry::new("resummation");
    r.register("partial-sum", || Box::new(PartialSum));
    r.register("pade", || Box::new(PadeResummation::default()));
    r
}

/// Options for [`sample_profile`].
#[derive(Clone, Copy, Default)]
pub struct SampleOptions<'a> {
    /// Smallest admissible `|X|` for evaluators that do not cover the crest;
    /// defaults to `0.5 / B`.
    pub x_min: Option<f64>,
    /// `None` evaluates the raw partial sum.
    pub resummation: Option<&'a dyn Resummation>,
}

/// Samples `eta(X) = sum_{n=1..K} a_n exp(-n B |X|)` on `xs` (co-moving frame).
pub fn sample_profile(
    series: &SteadyWaveSeries,
    xs: &[f64],
    opts: &SampleOptions<'_>,
) -> Result<GridProfile> {
    series.validate()?;
    let method: &dyn Resummation = opts.resummation.unwrap_or(&PartialSum);
    let x_min = opts.x_min.unwrap_or(0.5 / series.decay_rate);
    if !method.covers_crest() {
        if let Some(&x) = xs.iter().find(|x| x.abs() < x_min) {
            return Err(Error::Domain { x, x_min });
        }
    }
    let eval = method.prepare(series)?;
    let values = xs
        .iter()
        .map(|x| eval((-series.decay_rate * x.abs()).exp()))
        .collect();
    GridProfile::new(xs.to_vec(), values, Frame::CoMoving, 0.0)
}
