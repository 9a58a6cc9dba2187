use crate::error::{Error, Result};
use crate::registry::Registry;

use super::envelope_velocity;

/// A rule producing the steady-wave coefficients `a_2..a_K` from `a_1`.
pub trait CoefficientScheme: Send + Sync {
    fn name(&self) -> &'static str;

    /// `a_1..a_K` (index 0 holds `a_1`).
    fn coefficients(&self, b: f64, h: f64, order: usize, a1: f64) -> Result<Vec<f64>>;

    /// Exact radius of convergence of `sum alpha_k z^k`, when known in closed
    /// form.
    fn analytic_radius(&self, _b: f64, _h: f64) -> Option<f64> {
        None
    }
}

/// The full finite-depth recurrence
/// `a_k [sin(k B h) - k sin(B h)] = -k B sum_{n=1}^{k-1} a_n a_{k-n} cos(n B h)`.
#[derive(Debug, Default, Clone, Copy)]
pub struct FullRecurrence;

impl CoefficientScheme for FullRecurrence {
    fn name(&self) -> &'static str {
        "full"
    }

    fn coefficients(&self, b: f64, h: f64, order: usize, a1: f64) -> Result<Vec<f64>> {
        envelope_velocity(b, h)?;
        let theta = b * h;
        let cos: Vec<f64> = (0..order).map(|n| (n as f64 * theta).cos()).collect();
        let mut a = Vec::with_capacity(order);
        a.push(a1);
        for k in 2..=order {
            let kf = k as f64;
            let den = resonance_denominator(k, theta);
            if den == 0.0 || (kf * theta > 1.0 && den.abs() <= 16.0 * f64::EPSILON * kf * theta) {
                return Err(Error::ResonantOrder {
                    order: k,
                    denominator: den,
                });
            }
            // a[n-1] = a_n
            let conv: f64 = (1..k).map(|n| a[n - 1] * a[k - n - 1] * cos[n]).sum();
            a.push(-kf * b * conv / den);
        }
        Ok(a)
    }
}

/// `sin(k theta) - k sin(theta)`, by its Taylor series while `k theta <= 1`
/// so the shallow regime keeps full relative precision.
pub fn resonance_denominator(k: usize, theta: f64) -> f64 {
    let kf = k as f64;
    if (kf * theta).abs() > 1.0 {
        return (kf * theta).sin() - kf * theta.sin();
    }
    // sum_{j>=1} (-1)^j theta^{2j+1} (k^{2j+1} - k) / (2j+1)!
    let t2 = theta * theta;
    let k2 = kf * kf;
    let mut theta_pow = theta;
    let mut k_pow = kf;
    let mut fact = 1.0;
    let mut sum = 0.0;
    for j in 1..40 {
        theta_pow *= t2;
        k_pow *= k2;
        fact *= ((2 * j) * (2 * j + 1)) as f64;
        let term = theta_pow * (k_pow - kf) / fact;
        sum += if j % 2 == 1 { -term } else { term };
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Lowest-order (shallow-water) truncation of the full recurrence:
/// `a_k = 6 / (B^2 h^3 (k^2 - 1)) sum_{n=1}^{k-1} a_n a_{k-n}`.
#[derive(Debug, Default, Clone, Copy)]
pub struct ShallowRecurrence;

impl CoefficientScheme for ShallowRecurrence {
    fn name(&self) -> &'static str {
        "shallow"
    }

    fn coefficients(&self, b: f64, h: f64, order: usize, a1: f64) -> Result<Vec<f64>> {
        crate::error::positive("B", b)?;
        crate::error::positive("h", h)?;
        let s = b * b * h * h * h;
        let mut a = Vec::with_capacity(order);
        a.push(a1);
        for k in 2..=order {
            let kf = k as f64;
            let conv: f64 = (1..k).map(|n| a[n - 1] * a[k - n - 1]).sum();
            a.push(6.0 / (s * (kf * kf - 1.0)) * conv);
        }
        Ok(a)
    }

    fn analytic_radius(&self, b: f64, h: f64) -> Option<f64> {
        Some(b * b * h * h * h)
    }
}

pub fn registry() -> Registry<dyn CoefficientScheme> {
    let mut r: Registry<dyn CoefficientScheme> = Registry::new("coefficient scheme");
    r.register("full", || Box::new(FullRecurrence));
    r.register("shallow", || Box::new(ShallowRecurrence));
    r
}
