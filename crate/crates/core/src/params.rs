use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};

/// Physical description of the fluid layer, in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Layer depth `h` (m).
    pub depth: f64,
    /// Gravitational acceleration `g` (m/s^2).
    pub gravity: f64,
    /// Density `rho` (kg/m^3).
    pub density: f64,
    /// Surface-pressure coefficient `sigma` (N/m).
    pub surface_coeff: f64,
    /// Shallow-water sound speed `c0 = sqrt(g*h)` (m/s).
    pub sound_speed: f64,
}

impl PhysicalParams {
    pub fn new(depth: f64, gravity: f64, density: f64, surface_coeff: f64) -> Result<Self> {
        let depth = positive("h", depth)?;
        let gravity = positive("g", gravity)?;
        let density = positive("rho", density)?;
        if !(surface_coeff.is_finite() && surface_coeff >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: surface_coeff,
                reason: "must be finite and >= 0",
            });
        }
        Ok(Self {
            depth,
            gravity,
            density,
            surface_coeff,
            sound_speed: (gravity * depth).sqrt(),
        })
    }

    /// Unit-gravity, unit-density layer without surface pressure.
    pub fn with_depth(depth: f64) -> Result<Self> {
        Self::new(depth, 9.81, 1000.0, 0.0)
    }

    pub fn h(&self) -> f64 {
        self.depth
    }

    pub fn c0(&self) -> f64 {
        self.sound_speed
    }
}

/// Builds a validated [`PhysicalParams`] and derives `c0`.
pub fn make_params(h: f64, g: f64, rho: f64, sigma: f64) -> Result<PhysicalParams> {
    PhysicalParams::new(h, g, rho, sigma)
}
