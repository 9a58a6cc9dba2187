use thiserror::Error;

/// Errors raised by the steady-wave, residual and evolution kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// `B*h` is an integer multiple of pi, so the envelope velocity vanishes.
    #[error("degenerate envelope velocity: B*h = {bh} is a multiple of pi (A = -sin(Bh)/(Bh) would vanish)")]
    DegenerateVelocity { bh: f64 },

    /// `sin(theta) = 0`, the q-bracket denominator vanishes.
    #[error("singular q-deformation: theta = {theta} is a multiple of pi")]
    SingularDeformation { theta: f64 },

    /// `sin(k*B*h) = k*sin(B*h)` at some order `k >= 2`.
    #[error("resonant order k = {order}: sin(k*Bh) - k*sin(Bh) = {denominator:e}")]
    ResonantOrder { order: usize, denominator: f64 },

    #[error("no matching root for a1 in [{lo}, {hi}] ({detail})")]
    NoMatchingRoot { lo: f64, hi: f64, detail: String },

    #[error("radius of convergence undefined: coefficient tail is identically zero")]
    UndefinedRadius,

    #[error(
        "sample point x = {x} lies inside the excluded neighbourhood |x| < {x_min} of the crest"
    )]
    Domain { x: f64, x_min: f64 },

    /// `spectrum` holds mode magnitudes at the last finite state when raised
    /// by the time integrator.
    #[error("non-finite field at t = {time} (max |mode| = {max_mode:e} at index {index})")]
    Instability {
        time: f64,
        max_mode: f64,
        index: usize,
        spectrum: Vec<f64>,
    },

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}
