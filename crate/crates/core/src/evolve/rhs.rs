use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::registry::Registry;
use crate::spectral::{symmetrize, SpectralField, SpectralGrid};

/// Retained modes for pseudospectral products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Band {
    /// Largest retained `|j|` (mode index).
    pub jmax: usize,
}

impl Band {
    /// 2/3 rule when `dealias`, otherwise every mode below Nyquist.
    pub fn new(n: usize, dealias: bool) -> Self {
        Self {
            jmax: if dealias { n / 3 } else { n / 2 - 1 },
        }
    }

    pub fn contains(&self, j: usize, n: usize) -> bool {
        let m = if j <= n / 2 { j } else { n - j };
        m <= self.jmax && j != n / 2
    }

    pub fn project(&self, spectrum: &mut [Complex64]) {
        let n = spectrum.len();
        for (j, c) in spectrum.iter_mut().enumerate() {
            if !self.contains(j, n) {
                *c = Complex64::default();
            }
        }
    }
}

/// Right-hand side `eta_t = F(eta)` of a 1-D evolution equation on a
/// periodic grid, evaluated in Fourier space.
pub trait EvolutionRhs: Send + Sync {
    fn name(&self) -> &'static str;

    /// Angular frequency `omega(k)` of the linear part, so that a mode evolves
    /// as `exp(i (k x - omega t))`.
    fn linear_frequency(&self, k: f64, h: f64, c0: f64) -> f64;

    /// Bound on the linearized advective frequency at wavenumber `k` around a
    /// state of amplitude `amp`.
    fn advective_frequency(&self, k: f64, h: f64, c0: f64, amp: f64) -> f64;

    /// `d eta_hat / dt` for a band-limited spectrum; the result is
    /// band-limited and conjugate symmetric.
    fn spectral_rhs(
        &self,
        grid: &SpectralGrid,
        c0: f64,
        spectrum: &[Complex64],
        band: Band,
    ) -> Vec<Complex64>;
}

/// `eta_t = -(c0/h) [sin(h d) eta + d_x(eta cos(h d) eta)]`.
///
/// The quadratic part `eta_x cos(h d) eta + eta cos(h d) eta_x` is formed as the
/// exact derivative `d_x(eta cos(h d) eta)`, so the mean is untouched.
#[derive(Debug, Default, Clone, Copy)]
pub struct Gkdv;

/// `eta_t = -c0 eta_x + (c0 h^2 / 6) eta_xxx - (2 c0 / h) eta eta_x`.
#[derive(Debug, Default, Clone, Copy)]
pub struct Kdv;

fn product_derivative(
    grid: &SpectralGrid,
    left: &[Complex64],
    right: &[Complex64],
    band: Band,
) -> Vec<Complex64> {
    let l = grid.inverse(left);
    let r = grid.inverse(right);
    let prod: Vec<f64> = l.iter().zip(&r).map(|(a, b)| a * b).collect();
    let mut p = grid.forward(&prod);
    band.project(&mut p);
    grid.apply_dx(&mut p);
    p
}

impl EvolutionRhs for Gkdv {
    fn name(&self) -> &'static str {
        "gkdv"
    }

    fn linear_frequency(&self, k: f64, h: f64, c0: f64) -> f64 {
        c0 / h * (k * h).sinh()
    }

    fn advective_frequency(&self, k: f64, h: f64, c0: f64, amp: f64) -> f64 {
        2.0 * c0 / h * amp * k.abs() * (k * h).cosh()
    }

    fn spectral_rhs(
        &self,
        grid: &SpectralGrid,
        c0: f64,
        spectrum: &[Complex64],
        band: Band,
    ) -> Vec<Complex64> {
        let mut eta = spectrum.to_vec();
        band.project(&mut eta);
        let mut cos_eta = eta.clone();
        grid.apply_cos(&mut cos_eta);
        let mut out = product_derivative(grid, &eta, &cos_eta, band);
        let mut lin = eta;
        grid.apply_sin(&mut lin);
        let s = -c0 / grid.depth();
        for (o, l) in out.iter_mut().zip(&lin) {
            *o = (*o + l) * s;
        }
        band.project(&mut out);
        symmetrize(&mut out);
        out
    }
}

impl EvolutionRhs for Kdv {
    fn name(&self) -> &'static str {
        "kdv"
    }

    fn linear_frequency(&self, k: f64, h: f64, c0: f64) -> f64 {
        c0 * (k + h * h * k * k * k / 6.0)
    }

    fn advective_frequency(&self, k: f64, h: f64, c0: f64, amp: f64) -> f64 {
        2.0 * c0 / h * amp * k.abs()
    }

    fn spectral_rhs(
        &self,
        grid: &SpectralGrid,
        c0: f64,
        spectrum: &[Complex64],
        band: Band,
    ) -> Vec<Complex64> {
        let h = grid.depth();
        let mut eta = spectrum.to_vec();
        band.project(&mut eta);
        // (2 c0 / h) eta eta_x = (c0 / h) d_x(eta^2)
        let mut out = product_derivative(grid, &eta, &eta, band);
        for ((o, e), k) in out.iter_mut().zip(&eta).zip(grid.wavenumbers()) {
            let lin = Complex64::new(0.0, -c0 * (k + h * h * k * k * k / 6.0));
            *o = lin * e - *o * (c0 / h);
        }
        band.project(&mut out);
        symmetrize(&mut out);
        out
    }
}

pub fn registry() -> Registry<dyn EvolutionRhs> {
    let mut r: Registry<dyn EvolutionRhs> = Registry::new("evolution rhs");
    r.register("gkdv", || Box::new(Gkdv));
    r.register("kdv", || Box::new(Kdv));
    r
}

pub(crate) fn check_finite(spectrum: &[Complex64], time: f64) -> Result<()> {
    if spectrum
        .iter()
        .all(|c| c.re.is_finite() && c.im.is_finite())
    {
        return Ok(());
    }
    let mags: Vec<f64> = spectrum.iter().map(|c| c.norm()).collect();
    let index = mags.iter().position(|m| !m.is_finite()).unwrap_or(0);
    let max_mode = f64::INFINITY;
    Err(Error::Instability {
        time,
        max_mode,
        index,
        spectrum: mags,
    })
}

fn field_rhs(rhs: &dyn EvolutionRhs, field: &SpectralField, c0: f64) -> Result<SpectralField> {
    let grid = field.grid();
    let band = Band::new(grid.len(), true);
    let spec = field.spectrum();
    check_finite(&spec, 0.0)?;
    let out = rhs.spectral_rhs(grid, c0, &spec, band);
    check_finite(&out, 0.0)?;
    SpectralField::new(grid.clone(), grid.inverse(&out))
}

/// Finite-depth right-hand side on a physical-space field (dealiased).
pub fn gkdv_rhs(field: &SpectralField, c0: f64) -> Result<SpectralField> {
    field_rhs(&Gkdv, field, c0)
}

/// Shallow-water KdV right-hand side on a physical-space field (dealiased).
pub fn kdv_rhs(field: &SpectralField, c0: f64) -> Result<SpectralField> {
    field_rhs(&Kdv, field, c0)
}
