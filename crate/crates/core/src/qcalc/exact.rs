//! Exact q-calculus over `Z[q, 1/q][v]`.
//!
//! Treating `q` as a formal variable, the shift maps and the q-derivative act
//! on integer-coefficient polynomials without rounding: `[n]_q` expands to
//! `q^{n-1} + q^{n-3} + ... + q^{1-n}`. This gives an exact check of the
//! q-Leibniz rule and the `D_q(f^2)` factorization, independent of the
//! floating-point kernels in the parent module.

use std::collections::BTreeMap;

use num_complex::Complex64;

/// Laurent polynomial in `q` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent(BTreeMap<i64, i64>);

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(exp, c);
        }
        Self(m)
    }

    /// `[n]_q = sum_{j=0}^{n-1} q^{n-1-2j}`.
    pub fn q_integer(n: usize) -> Self {
        let n = n as i64;
        let mut out = Self::zero();
        for j in 0..n {
            out.add_term(n - 1 - 2 * j, 1);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, exp: i64, c: i64) {
        let e = self.0.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn add(&self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &rhs.0 {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }

    pub fn mul(&self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &rhs.0 {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiplication by `q^exp`.
    pub fn shift_exp(&self, exp: i64) -> Laurent {
        Laurent(self.0.iter().map(|(&e, &c)| (e + exp, c)).collect())
    }

    /// Value at `q = exp(i theta)`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.0
            .iter()
            .map(|(&e, &c)| Complex64::from_polar(c as f64, e as f64 * theta))
            .sum()
    }
}

/// Polynomial in `v` with [`Laurent`] coefficients; index is the power of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly(pub Vec<Laurent>);

impl QPoly {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| Laurent::constant(c)).collect()).normalized()
    }

    fn normalized(mut self) -> Self {
        while self.0.last().is_some_and(Laurent::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let len = self.0.len().max(rhs.0.len());
        let zero = Laurent::zero();
        QPoly(
            (0..len)
                .map(|n| {
                    self.0
                        .get(n)
                        .unwrap_or(&zero)
                        .add(rhs.0.get(n).unwrap_or(&zero))
                })
                .collect(),
        )
        .normalized()
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return QPoly::default();
        }
        let mut out = vec![Laurent::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        QPoly(out).normalized()
    }

    /// `f(q^direction v)`.
    pub fn shift(&self, direction: i64) -> QPoly {
        QPoly(
            self.0
                .iter()
                .enumerate()
                .map(|(n, c)| c.shift_exp(direction * n as i64))
                .collect(),
        )
        .normalized()
    }

    /// Symmetric q-derivative `v^n -> [n]_q v^{n-1}`.
    pub fn d_q(&self) -> QPoly {
        QPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c.mul(&Laurent::q_integer(n)))
                .collect(),
        )
        .normalized()
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::qcalc::{q_bracket, q_derivative, PowerSeries, QDeformation};

    #[test]
    fn q_integer_matches_sine_ratio() {
        for n in 1..9 {
            for theta in [0.2, 1.1, 2.9] {
                let exact = Laurent::q_integer(n).eval(theta);
                let float = q_bracket(n, QDeformation::new(theta)).unwrap();
                assert!(exact.im.abs() < 1e-12);
                assert!((exact.re - float).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_derivative_evaluates_to_float_derivative() {
        let coeffs = [2, -1, 0, 5, 3];
        let theta = 0.7;
        let exact = QPoly::from_ints(&coeffs).d_q();
        let float = q_derivative(
            &PowerSeries::new(coeffs.iter().map(|&c| c as f64).collect()),
            QDeformation::new(theta),
        )
        .unwrap();
        for (n, c) in exact.0.iter().enumerate() {
            assert!((c.eval(theta).re - float.coeff(n)).abs() < 1e-12);
        }
    }

    fn ints() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..20, 1..10)
    }

    proptest! {
        #[test]
        fn leibniz_holds_exactly(a in ints(), b in ints()) {
            let f = QPoly::from_ints(&a);
            let g = QPoly::from_ints(&b);
            let lhs = f.mul(&g).d_q();
            let rhs = f.shift(1).mul(&g.d_q()).add(&g.shift(-1).mul(&f.d_q()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn square_factorization_holds_exactly(a in ints()) {
            let f = QPoly::from_ints(&a);
            let lhs = f.mul(&f).d_q();
            let rhs = f.shift(1).add(&f.shift(-1)).mul(&f.d_q());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
