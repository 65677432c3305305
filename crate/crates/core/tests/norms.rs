use num_complex::Complex64;
use rlab_core::besself::BesselJ;
use rlab_core::norms::*;
use rlab_core::quadrature::{gauss_legendre, integrate_breaks, uniform_breaks};
use rlab_core::spherical::{Mode, ModeIndex, RadialProfile, SurfaceFunction};
use rlab_core::QuadratureSpec;
use std::f64::consts::{PI, TAU};

fn single(n: usize, k: usize, amp: Complex64) -> SurfaceFunction<f64> {
    let idx = if n == 2 { ModeIndex::new(2, k, 1).unwrap() } else { ModeIndex::zonal(n, k).unwrap() };
    SurfaceFunction::single(idx, RadialProfile::bump(1.5, 0.45, amp).unwrap()).unwrap()
}

fn gl(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    integrate_breaks(&mut |x: f64| f(x), &uniform_breaks(a, b, panels), &gauss_legendre(20))
}

#[test]
fn zero_field_has_zero_norm() {
    let g = single(2, 1, Complex64::new(0.0, 0.0));
    let f = ExtensionField::new(&g, &QuadratureSpec::default()).unwrap();
    let r = lq_spacetime_norms(&f, &[2.0, 4.0], Domain::Annulus { big_r: 8.0 }, &NormGrid::default()).unwrap();
    assert!(r.iter().all(|r| r.value == 0.0 && r.tail_bound == 0.0));
}

#[test]
fn homogeneity() {
    let quad = QuadratureSpec::default();
    let grid = NormGrid::default();
    let dom = Domain::Annulus { big_r: 8.0 };
    let a = lq_spacetime_norms(&ExtensionField::new(&single(2, 2, Complex64::new(1.0, 0.0)), &quad).unwrap(), &[4.0], dom, &grid).unwrap();
    let b = lq_spacetime_norms(&ExtensionField::new(&single(2, 2, Complex64::new(3.0, -4.0)), &quad).unwrap(), &[4.0], dom, &grid).unwrap();
    assert!((b[0].value / a[0].value - 5.0).abs() < 1e-12);
}

#[test]
fn q2_matches_plancherel_in_time() {
    // ∫|c|²dt = (π/s)∫|F(r,ρ)|²/ρ dρ with F = 2π a(ρ) J_ν(2πrρ) r^{−(n−2)/2} ρ^{n/2}
    for (n, k, big_r) in [(2usize, 0usize, 16.0), (2, 3, 8.0), (3, 1, 8.0)] {
        let g = single(n, k, Complex64::new(1.0, 0.0));
        let nu = g.modes()[0].index.nu::<f64>();
        let j = BesselJ::new(nu);
        let inner = |r: f64| {
            gl(
                |rho| {
                    let a = g.coefficient(0, rho).re;
                    let f = TAU * a * j.value(TAU * r * rho).unwrap() * r.powf(-0.5 * (n as f64 - 2.0)) * rho.powf(0.5 * n as f64);
                    f * f / rho
                },
                1.05,
                1.95,
                8,
            ) * PI
                / TAU
        };
        let expect = gl(|r| inner(r) * r.powi(n as i32 - 1), 0.5 * big_r, big_r, 16).sqrt();
        let f = ExtensionField::new(&g, &QuadratureSpec::default()).unwrap();
        let got = lq_spacetime_norms(&f, &[2.0], Domain::Annulus { big_r }, &NormGrid::default()).unwrap()[0];
        let rel = (got.value - expect).abs() / expect;
        assert!(rel < 2e-3, "n={n} k={k}: {} vs {expect} ({rel:.2e})", got.value);
        assert!(got.tail_bound <= 1e-3 * got.value);
    }
}

#[test]
fn q4_matches_brute_force_quadrature() {
    // c(t, r) = 2π i^k ∫ e^{2πitρ²} a(ρ) J_ν(2πrρ) ρ dρ by fixed Gauss rules, trapezoid in t
    let g = single(2, 1, Complex64::new(1.0, 0.0));
    let mode = &g.modes()[0];
    let j = BesselJ::new(1.0);
    let y4 = harmonic_lq(&mode.index, 4.0).unwrap();
    let (t_max, dt) = (20.0, 0.04);
    let steps = (2.0 * t_max / dt) as usize;
    let rho_nodes: Vec<(f64, f64)> = uniform_breaks(1.05, 1.95, 8)
        .windows(2)
        .flat_map(|w| gauss_legendre(20).mapped(w[0], w[1]).collect::<Vec<_>>())
        .collect();
    let mut total = 0.0;
    for (r, w) in gauss_legendre(24).mapped(2.0, 4.0) {
        let amp: Vec<(f64, f64)> = rho_nodes
            .iter()
            .map(|&(rho, wr)| (rho, wr * TAU * g.coefficient(0, rho).re * j.value(TAU * r * rho).unwrap() * rho))
            .collect();
        let mut s = 0.0;
        for i in 0..=steps {
            let t = -t_max + i as f64 * dt;
            let c: Complex64 = amp.iter().map(|&(rho, a)| Complex64::from_polar(a, TAU * t * rho * rho)).sum();
            s += c.norm().powi(4);
        }
        total += w * r * s * dt;
    }
    let expect = (total * y4).powf(0.25);
    let f = ExtensionField::new(&g, &QuadratureSpec::default()).unwrap();
    let got = lq_spacetime_norms(&f, &[4.0], Domain::Annulus { big_r: 4.0 }, &NormGrid::default()).unwrap()[0];
    assert!((got.value - expect).abs() < 2e-3 * expect, "{} vs {expect}", got.value);
}

#[test]
fn annulus_self_convergence_under_doubling() {
    let g = single(2, 0, Complex64::new(1.0, 0.0));
    let f = ExtensionField::new(&g, &QuadratureSpec::default()).unwrap();
    let dom = Domain::Annulus { big_r: 64.0 };
    let coarse = lq_spacetime_norms(&f, &[2.0, 4.0], dom, &NormGrid::default()).unwrap();
    let fine_grid = NormGrid { wavelengths_per_panel: 1.5, oversample: 2.0, ..NormGrid::default() };
    let fine = lq_spacetime_norms(&f, &[2.0, 4.0], dom, &fine_grid).unwrap();
    for (a, b) in coarse.iter().zip(&fine) {
        assert!((a.value - b.value).abs() < 1e-3 * b.value, "q={}: {} vs {}", a.q, a.value, b.value);
    }
}

#[test]
fn slab_q2_is_mass_times_length() {
    // ‖u(t)‖_{L²_x} = ‖g‖_{L²(dξ)} for every t
    let g = single(2, 2, Complex64::new(1.0, 0.0));
    let quad = QuadratureSpec::default();
    let f = ExtensionField::new(&g, &quad).unwrap();
    let t_end = 0.5;
    let got = lq_spacetime_norms(&f, &[2.0], Domain::Slab { t_end }, &NormGrid::default()).unwrap()[0];
    let expect = t_end.sqrt() * lp_surface_norm(&g, 2.0, 0.0).unwrap();
    assert!((got.value - expect).abs() < 2e-3 * expect, "{} vs {expect}", got.value);
}

#[test]
fn schrodinger_slab_conserves_mass() {
    // ‖e^{itΔ}u₀‖_{L²_x} = (2π)^{n/2}‖û₀‖_{L²}
    let g = single(2, 0, Complex64::new(1.0, 0.0)).at_scale(2.0);
    let f = ExtensionField::schrodinger(&g, &QuadratureSpec::default()).unwrap();
    let got = lq_spacetime_norms(&f, &[2.0], Domain::Slab { t_end: 1.0 }, &NormGrid::default()).unwrap()[0];
    let expect = TAU * lp_surface_norm(&g, 2.0, 0.0).unwrap();
    assert!((got.value - expect).abs() < 2e-3 * expect, "{} vs {expect}", got.value);
}

#[test]
fn surface_norm_factorizes_for_single_modes() {
    for (n, k, p) in [(2usize, 3usize, 4.0), (3, 2, 3.0), (5, 2, 2.5)] {
        let g = single(n, k, Complex64::new(0.7, 0.2));
        let idx = g.modes()[0].index;
        let radial = gl(|rho| g.coefficient(0, rho).norm().powf(p) * rho.powi(n as i32 - 1), 1.05, 1.95, 16).powf(1.0 / p);
        let expect = radial * harmonic_lq(&idx, p).unwrap().powf(1.0 / p);
        let got = lp_surface_norm(&g, p, 0.0).unwrap();
        assert!((got - expect).abs() < 1e-10 * expect, "n={n}: {got} vs {expect}");
    }
}

#[test]
fn surface_norm_parseval_and_monotone_weights() {
    let modes = (0..4)
        .map(|k| Mode {
            index: ModeIndex::new(2, k, 1 + k % 2).unwrap(),
            profile: RadialProfile::bump(1.3 + 0.1 * k as f64, 0.25, Complex64::new(1.0, 0.3 * k as f64)).unwrap(),
        })
        .collect();
    let g = SurfaceFunction::new(2, modes).unwrap();
    for s in [0.0, 0.5, 1.0] {
        let a = lp_surface_norm(&g, 2.0, s).unwrap();
        let b = coefficient_l2(&g, s).unwrap();
        assert!((a - b).abs() < 1e-10 * b, "s={s}: {a} vs {b}");
    }
    let mut prev = 0.0;
    for s in [0.0, 0.25, 0.5, 1.0, 2.0] {
        let v = lp_surface_norm(&g, 4.0, s).unwrap();
        assert!(v >= prev);
        prev = v;
    }
}

#[test]
fn noisy_power_law_fit() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<(f64, f64)> = (3..10)
        .map(|e| {
            let x = 2f64.powi(e);
            (x, 1.7 * x.powf(-0.25) * (1.0 + 0.01 * (rng.random::<f64>() * 2.0 - 1.0)))
        })
        .collect();
    let f = fit_scaling(&samples).unwrap();
    assert!((f.slope + 0.25).abs() < 0.01 && f.matches(-0.25, 0.01) && f.at_most(-0.25, 0.05));
}

#[test]
fn fixed_time_mass_is_conserved() {
    let g = single(2, 4, Complex64::new(1.0, 0.0)).at_scale(3.0);
    let f = ExtensionField::schrodinger(&g, &QuadratureSpec::default()).unwrap();
    let expect = TAU * lp_surface_norm(&g, 2.0, 0.0).unwrap();
    for t in [0.0, 0.05, 0.3] {
        let got = lq_space_norms(&f, &[2.0], t, &NormGrid::default()).unwrap()[0];
        assert!((got.value - expect).abs() < 1e-4 * expect, "t={t}: {} vs {expect}", got.value);
    }
}
