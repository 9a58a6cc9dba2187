//! Robust Padé approximation.
//!
//! Builds the `[m/n]` approximant from the Toeplitz system of the Taylor
//! coefficients, reducing `m` and `n` together until the lower block has full
//! numerical rank (SVD with relative tolerance). This removes the spurious
//! pole/zero pairs that plain Padé produces when the underlying function is a
//! rational of lower degree, which is exactly the situation of the shallow
//! limit.

use nalgebra::DMatrix;

/// Rational function `p(x) / q(x)` with `q(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pade {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl Pade {
    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.numerator, x) / horner(&self.denominator, x)
    }

    pub fn numerator_at(&self, x: f64) -> f64 {
        horner(&self.numerator, x)
    }

    pub fn denominator_at(&self, x: f64) -> f64 {
        horner(&self.denominator, x)
    }

    /// Degrees `(m, n)` after reduction.
    pub fn degrees(&self) -> (usize, usize) {
        (
            self.numerator.len().saturating_sub(1),
            self.denominator.len().saturating_sub(1),
        )
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// Default relative tolerance for the rank decisions.
pub const DEFAULT_TOL: f64 = 1e-14;

/// `[m/n]` approximant of `sum c_j x^j`; uses `c[0..=m+n]` (missing entries
/// are treated as zero).
pub fn pade(c: &[f64], m: usize, n: usize, tol: f64) -> Pade {
    let mut m = m;
    let mut n = n;
    let coef = |j: usize| c.get(j).copied().unwrap_or(0.0);
    let cs: Vec<f64> = (0..=m + n).map(coef).collect();
    let norm = cs.iter().map(|x| x * x).sum::<f64>().sqrt();
    let ts = tol * norm;

    let trivial = || Pade {
        numerator: vec![0.0],
        denominator: vec![1.0],
    };
    if cs[..=m].iter().map(|x| x * x).sum::<f64>().sqrt() <= ts {
        return trivial();
    }

    // Z[i][j] = c_{i-j}
    let toeplitz = |i: usize, j: usize| if i >= j { cs[i - j] } else { 0.0 };

    let mut null: Option<Vec<f64>> = None;
    while n > 0 {
        // Lower block rows m+1..=m+n, columns 0..=n, padded to square with a
        // zero row so the SVD returns the full right basis.
        let mut block = DMatrix::<f64>::zeros(n + 1, n + 1);
        for r in 0..n {
            for j in 0..=n {
                block[(r, j)] = toeplitz(m + 1 + r, j);
            }
        }
        let svd = block.svd(false, true);
        let rank = svd.singular_values.iter().filter(|&&s| s > ts).count();
        if rank == n {
            let v_t = svd.v_t.expect("right singular vectors requested");
            let (idx, _) = svd
                .singular_values
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("non-empty");
            null = Some(v_t.row(idx).iter().copied().collect());
            break;
        }
        let drop = n - rank;
        if drop > m {
            m = 0;
        } else {
            m -= drop;
        }
        n = rank;
    }

    let Some(mut b) = null else {
        return Pade {
            numerator: cs[..=m].to_vec(),
            denominator: vec![1.0],
        };
    };
    let mut a: Vec<f64> = (0..=m)
        .map(|i| (0..=n).map(|j| toeplitz(i, j) * b[j]).sum())
        .collect();

    // Cancel common powers of x and trailing negligible terms.
    let bmax = b.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let lam = b.iter().position(|x| x.abs() > tol * bmax).unwrap_or(0);
    b.drain(..lam);
    a.drain(..lam.min(a.len()));
    while b.len() > 1 && b.last().is_some_and(|x| x.abs() <= tol * bmax) {
        b.pop();
    }
    while a.len() > 1 && a.last().is_some_and(|x| x.abs() <= ts) {
        a.pop();
    }
    let b0 = b[0];
    if a.is_empty() {
        a.push(0.0);
    }
    Pade {
        numerator: a.iter().map(|x| x / b0).collect(),
        denominator: b.iter().map(|x| x / b0).collect(),
    }
}

/// Diagonal approximant of the largest order the coefficients support,
/// capped at `max_order`.
pub fn diagonal(c: &[f64], max_order: usize) -> Pade {
    let order = (c.len().saturating_sub(1) / 2).min(max_order);
    pade(c, order, order, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_rational() {
        // x / (1 + x)^2 = sum (-1)^{k+1} k x^k
        let c: Vec<f64> = (0..40)
            .map(|k| {
                if k == 0 {
                    0.0
                } else {
                    k as f64 * if k % 2 == 0 { -1.0 } else { 1.0 }
                }
            })
            .collect();
        let p = diagonal(&c, 15);
        let (m, n) = p.degrees();
        assert!(n == 2 && m <= 2, "degrees {m}/{n}");
        for x in [0.1, 0.5, 0.95, 1.0, 3.0] {
            let exact = x / (1.0 + x) / (1.0 + x);
            assert!(
                (p.eval(x) - exact).abs() < 1e-13 * exact.abs().max(1e-3),
                "x={x}"
            );
        }
    }

    #[test]
    fn exponential_is_accurate_inside_disk() {
        let mut c = vec![1.0];
        for k in 1..21 {
            let prev = c[k - 1];
            c.push(prev / k as f64);
        }
        let p = pade(&c, 5, 5, DEFAULT_TOL);
        assert_eq!(p.degrees(), (5, 5));
        // [5/5] truncation errors from a 30-digit reference
        assert!((p.eval(1.0) - 1f64.exp() - 2.766505e-10).abs() < 1e-14);
        assert!((p.eval(-2.0) - (-2f64).exp() + 3.025430e-8).abs() < 1e-13);
    }

    #[test]
    fn polynomial_input_gives_trivial_denominator() {
        let p = diagonal(&[1.0, 2.0, 0.0, 0.0, 0.0], 2);
        assert_eq!(p.denominator, vec![1.0]);
        assert!((p.eval(0.5) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_series() {
        let p = diagonal(&[0.0; 9], 4);
        assert_eq!(p.eval(0.3), 0.0);
    }

    #[test]
    fn geometric_series_pole() {
        let c = vec![1.0; 30];
        let p = diagonal(&c, 10);
        assert_eq!(p.degrees(), (0, 1));
        assert!((p.eval(0.99) - 100.0).abs() < 1e-9);
        assert!((p.eval(-3.0) - 0.25).abs() < 1e-14);
    }
}
