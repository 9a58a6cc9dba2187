//! Numerical laboratory for the generalized Korteweg-de Vries equation:
//! steady solitary-wave series, q-calculus primitives, residual and
//! dispersion checks, and periodic spectral evolution.

pub mod error;
pub mod evolve;
pub mod grid;
pub mod params;
pub mod qcalc;
pub mod registry;
pub mod residual;
pub mod series;
pub mod spectral;
pub mod steady;

pub use error::{Error, Result};
pub use evolve::{
    coefficient_ode_rhs, gkdv_rhs, integrate, integrate_coefficients, kdv_rhs, stability_bound,
    CoefficientState, EvolutionRhs, EvolveConfig, FilterConfig, Trajectory,
};
pub use grid::{Frame, GridProfile};
pub use params::{make_params, PhysicalParams};
pub use qcalc::{
    cos_average, q_bracket, q_derivative, shift, sin_difference, PowerSeries, QDeformation,
};
pub use registry::Registry;
pub use residual::{
    dispersion, evolution_symbol, evolution_symbol_complex, q_residual, scheme_residual,
    shallow_residual, steady_residual, DispersionInput, ResidualReport,
};
pub use series::{Constants, Ledger, SteadyWaveSeries};
pub use spectral::{SpectralField, SpectralGrid};
pub use steady::{
    envelope_velocity, koebe_bound_check, match_a1, matched_series, radius_estimate,
    recurrence_coeffs, sample_profile, shallow_coeffs, CoefficientScheme, KoebeReport,
    MatchOptions, Resummation, SampleOptions,
};
