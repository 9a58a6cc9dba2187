//! Periodic Fourier grid with cached multipliers for the finite-depth
//! operators `cos(h d/dx)`, `sin(h d/dx)` and `d/dx`.
//!
//! On a mode `exp(i k x)` the operators act as
//! `cos(h d/dx) -> cosh(k h)`, `sin(h d/dx) -> i sinh(k h)` and `d/dx -> i k`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{positive, Error, Result};

pub struct SpectralGrid {
    length: f64,
    n: usize,
    depth: f64,
    wavenumbers: Vec<f64>,
    cosh: Vec<f64>,
    sinh: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("length", &self.length)
            .field("n", &self.n)
            .field("depth", &self.depth)
            .finish()
    }
}

impl SpectralGrid {
    /// `n` must be a power of two (>= 4).
    pub fn new(length: f64, n: usize, depth: f64) -> Result<Self> {
        positive("domain_length", length)?;
        positive("h", depth)?;
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "point count must be a power of two >= 4, got {n}"
            )));
        }
        let dk = 2.0 * PI / length;
        let wavenumbers: Vec<f64> = (0..n)
            .map(|j| {
                if j < n / 2 {
                    j as f64 * dk
                } else if j == n / 2 {
                    // Nyquist: odd operators are zeroed, even ones use |k|.
                    0.0
                } else {
                    (j as f64 - n as f64) * dk
                }
            })
            .collect();
        let nyquist = (n / 2) as f64 * dk;
        let cosh = (0..n)
            .map(|j| {
                let k = if j == n / 2 { nyquist } else { wavenumbers[j] };
                (k * depth).cosh()
            })
            .collect();
        let sinh = wavenumbers.iter().map(|k| (k * depth).sinh()).collect();
        let mut planner = FftPlanner::new();
        Ok(Self {
            length,
            n,
            depth,
            wavenumbers,
            cosh,
            sinh,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Grid positions `x_j = j L / n`.
    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| j as f64 * self.dx()).collect()
    }

    /// Signed wavenumbers in FFT order (Nyquist reported as 0).
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn cosh_multipliers(&self) -> &[f64] {
        &self.cosh
    }

    /// `sinh(k h)`, odd in `k`; the `sin(h d/dx)` multiplier is `i` times this.
    pub fn sinh_multipliers(&self) -> &[f64] {
        &self.sinh
    }

    /// Largest retained `|k|` for a mode index cutoff `|j| <= jmax`.
    pub fn wavenumber_at(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.length
    }

    pub fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward.process(&mut buf);
        symmetrize(&mut buf);
        buf
    }

    pub fn inverse(&self, spectrum: &[Complex64]) -> Vec<f64> {
        let mut buf = spectrum.to_vec();
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter().map(|c| c.re * scale).collect()
    }

    pub fn apply_cos(&self, spectrum: &mut [Complex64]) {
        for (c, m) in spectrum.iter_mut().zip(&self.cosh) {
            *c *= m;
        }
    }

    pub fn apply_sin(&self, spectrum: &mut [Complex64]) {
        for (c, m) in spectrum.iter_mut().zip(&self.sinh) {
            *c *= Complex64::new(0.0, *m);
        }
    }

    pub fn apply_dx(&self, spectrum: &mut [Complex64]) {
        for (c, k) in spectrum.iter_mut().zip(&self.wavenumbers) {
            *c *= Complex64::new(0.0, *k);
        }
    }
}

/// Forces exact conjugate symmetry of a spectrum of a real field.
pub fn symmetrize(spectrum: &mut [Complex64]) {
    let n = spectrum.len();
    spectrum[0].im = 0.0;
    if n.is_multiple_of(2) {
        spectrum[n / 2].im = 0.0;
    }
    for j in 1..n.div_ceil(2) {
        let avg = (spectrum[j] + spectrum[n - j].conj()) * 0.5;
        spectrum[j] = avg;
        spectrum[n - j] = avg.conj();
    }
}

/// Real field on a [`SpectralGrid`].
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Arc<SpectralGrid>,
    values: Vec<f64>,
}

impl SpectralField {
    pub fn new(grid: Arc<SpectralGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "field has {} values for a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at the grid positions.
    pub fn from_fn(grid: Arc<SpectralGrid>, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.positions().into_iter().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn spectrum(&self) -> Vec<Complex64> {
        self.grid.forward(&self.values)
    }

    fn map_spectrum(&self, op: impl Fn(&SpectralGrid, &mut [Complex64])) -> Self {
        let mut s = self.spectrum();
        op(&self.grid, &mut s);
        Self {
            grid: self.grid.clone(),
            values: self.grid.inverse(&s),
        }
    }

    /// `cos(h d/dx) eta`.
    pub fn cos_h(&self) -> Self {
        self.map_spectrum(SpectralGrid::apply_cos)
    }

    /// `sin(h d/dx) eta`.
    pub fn sin_h(&self) -> Self {
        self.map_spectrum(SpectralGrid::apply_sin)
    }

    pub fn dx(&self) -> Self {
        self.map_spectrum(SpectralGrid::apply_dx)
    }

    /// Trapezoidal (spectrally exact) mean times length: `int eta dx`.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.dx()
    }
}
