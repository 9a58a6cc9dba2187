use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gkdv_core::evolve::{rhs, FilterConfig};
use gkdv_core::{
    integrate, integrate_coefficients, make_params, CoefficientState, EvolveConfig, SpectralField,
    SpectralGrid,
};

/// Random real field built from modes `1..=modes` with the given amplitude.
fn random_field(
    grid: &Arc<SpectralGrid>,
    modes: usize,
    amplitude: f64,
    seed: u64,
) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = grid.length();
    let terms: Vec<(f64, f64, f64)> = (1..=modes)
        .map(|m| {
            let k = 2.0 * PI * m as f64 / l;
            (
                k,
                rng.random_range(-1.0..1.0),
                rng.random_range(0.0..2.0 * PI),
            )
        })
        .collect();
    let scale = amplitude / modes as f64;
    SpectralField::from_fn(grid.clone(), |x| {
        terms
            .iter()
            .map(|(k, c, p)| scale * c * (k * x + p).cos())
            .sum()
    })
}

fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}

#[test]
fn gkdv_and_kdv_agree_on_long_waves_over_one_transit() {
    let h = 0.1;
    let c0 = make_params(h, 9.81, 1000.0, 0.0).unwrap().c0();
    // modes 1..10 on a 10 pi domain: k h <= 0.2
    let l = 10.0 * PI;
    let grid = Arc::new(SpectralGrid::new(l, 128, h).unwrap());
    let field = random_field(&grid, 10, 1e-3 * h, 11);
    let config = EvolveConfig {
        dt: 2e-3,
        t_end: l / c0,
        filter: FilterConfig::off(),
        ..EvolveConfig::default()
    };
    let run = |name: &str| {
        let registry = rhs::registry();
        let r = registry.create(name).unwrap();
        integrate(&field, c0, &config, r.as_ref()).unwrap()
    };
    let (g, k) = (run("gkdv"), run("kdv"));
    let err = rel_l2(g.final_field.values(), k.final_field.values());
    assert!(err <= 1e-3, "relative trajectory gap {err:e}");
}

#[test]
fn mass_is_conserved_for_random_smooth_data() {
    let h = 0.5;
    let c0 = make_params(h, 9.81, 1000.0, 0.0).unwrap().c0();
    let grid = Arc::new(SpectralGrid::new(20.0, 64, h).unwrap());
    for seed in 0..3 {
        let field = random_field(&grid, 6, 0.05, seed);
        for name in ["gkdv", "kdv"] {
            let r = rhs::registry().create(name).unwrap();
            let config = EvolveConfig {
                dt: 1e-3,
                t_end: 1.0,
                ..EvolveConfig::default()
            };
            let t = integrate(&field, c0, &config, r.as_ref()).unwrap();
            assert_eq!(t.diagnostics.steps, 1000);
            assert!(
                t.diagnostics.max_mass_drift <= 1e-10,
                "{name}: {:e}",
                t.diagnostics.max_mass_drift
            );
        }
    }
}

#[test]
fn coefficient_ode_is_lower_triangular() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let n = 12;
        let mut a: Vec<f64> = (0..n).map(|_| rng.random_range(-0.1..0.1)).collect();
        a[0] = 0.0;
        let (b, h) = (rng.random_range(0.2..2.0), rng.random_range(0.05..1.0));
        let m = rng.random_range(1..n);
        let base = CoefficientState::new(a.clone(), b, h, 1.0).unwrap();
        a[m] += rng.random_range(-0.05..0.05);
        let perturbed = CoefficientState::new(a, b, h, 1.0).unwrap();
        let x = integrate_coefficients(&base, 0.5, 200).unwrap();
        let y = integrate_coefficients(&perturbed, 0.5, 200).unwrap();
        for k in 0..m {
            assert_eq!(
                x.a[k].to_bits(),
                y.a[k].to_bits(),
                "k = {k} moved after perturbing m = {m}"
            );
        }
    }
}
