use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlab_core::extension::*;
use rlab_core::quadrature::{gauss_legendre, integrate_breaks, uniform_breaks};
use rlab_core::spherical::{parseval_check, Mode, ModeIndex, RadialProfile, SurfaceFunction};
use rlab_core::QuadratureSpec;

fn profile(center: f64, width: f64, re: f64, im: f64) -> RadialProfile<f64> {
    RadialProfile::bump(center, width, Complex64::new(re, im)).unwrap()
}

fn single(n: usize, k: usize, l: usize, p: RadialProfile<f64>) -> SurfaceFunction<f64> {
    SurfaceFunction::single(ModeIndex::new(n, k, l).unwrap(), p).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, t_max: f64, x_max: f64) -> SpacetimePoint<f64> {
    let t = rng.random_range(-t_max..t_max);
    let r = rng.random_range(0.0..x_max);
    let dir: Vec<f64> = if n == 2 {
        let a = rng.random_range(0.0..std::f64::consts::TAU);
        vec![a.cos(), a.sin()]
    } else {
        let z: f64 = rng.random_range(-1.0..1.0);
        let a = rng.random_range(0.0..std::f64::consts::TAU);
        let s = (1.0 - z * z).sqrt();
        vec![s * a.cos(), s * a.sin(), z]
    };
    SpacetimePoint::polar(t, r, dir).unwrap()
}

#[test]
fn modal_matches_direct_in_the_plane() {
    let quad = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..=5 {
        for l in 1..=(if k == 0 { 1 } else { 2 }) {
            let g = single(2, k, l, profile(1.45, 0.4, 0.8, 0.3));
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let p = random_point(&mut rng, 2, 2.0, 8.0);
                let d = extension_direct(&g, &p, &quad).unwrap();
                let m = extension_modal(&g, &p, &quad).unwrap();
                worst = worst.max((d - m).norm());
            }
            assert!(worst <= 1e-6, "k={k} l={l}: {worst:e}");
        }
    }
}

#[test]
fn modal_matches_direct_in_space() {
    let quad = QuadratureSpec::default().with_tolerance(1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (k, l) in [(0, 1), (1, 1), (2, 3), (3, 2)] {
        let g = single(3, k, l, profile(1.5, 0.45, 1.0, -0.2));
        for _ in 0..4 {
            let p = random_point(&mut rng, 3, 0.5, 2.0);
            let d = extension_direct(&g, &p, &quad).unwrap();
            let m = extension_modal(&g, &p, &quad).unwrap();
            assert!((d - m).norm() < 1e-6, "k={k} l={l} at {p:?}: {d} vs {m}");
        }
    }
}

#[test]
fn several_modes_and_zero_function() {
    let quad = QuadratureSpec::default();
    let modes = vec![
        Mode { index: ModeIndex::new(2, 0, 1).unwrap(), profile: profile(1.3, 0.25, 1.0, 0.0) },
        Mode { index: ModeIndex::new(2, 2, 2).unwrap(), profile: profile(1.6, 0.3, 0.0, 0.7) },
    ];
    let g = SurfaceFunction::new(2, modes).unwrap();
    let p = SpacetimePoint::from_cartesian(0.3, &[1.2, -0.7]).unwrap();
    let d = extension_direct(&g, &p, &quad).unwrap();
    let m = extension_modal(&g, &p, &quad).unwrap();
    assert!((d - m).norm() < 1e-8);

    let z = SurfaceFunction::<f64>::zero(2).unwrap();
    assert_eq!(extension_direct(&z, &p, &quad).unwrap(), Complex64::new(0.0, 0.0));
    assert_eq!(extension_modal(&z, &p, &quad).unwrap(), Complex64::new(0.0, 0.0));
}

#[test]
fn origin_value_is_the_integral_of_g() {
    let quad = QuadratureSpec::default();
    let g = single(2, 0, 1, profile(1.5, 0.4, 1.0, 0.0));
    let p = SpacetimePoint::from_cartesian(0.0, &[0.0, 0.0]).unwrap();
    // ∫ g = 2π Y₀ ∫ a(ρ) ρ dρ with Y₀ = 1/√(2π)
    let rule = gauss_legendre(16);
    let a = profile(1.5, 0.4, 1.0, 0.0);
    let radial: Complex64 = integrate_breaks(&mut |r: f64| a.eval(r) * r, &uniform_breaks(1.0, 2.0, 32), &rule);
    let expect = radial * std::f64::consts::TAU.sqrt();
    assert!((extension_direct(&g, &p, &quad).unwrap() - expect).norm() < 1e-10);
    assert!((extension_modal(&g, &p, &quad).unwrap() - expect).norm() < 1e-10);
}

#[test]
fn conjugate_symmetry_for_real_even_data() {
    let quad = QuadratureSpec::default();
    let g = single(2, 2, 1, profile(1.5, 0.4, 1.0, 0.0));
    let p = SpacetimePoint::from_cartesian(0.7, &[1.1, 2.3]).unwrap();
    let q = SpacetimePoint::from_cartesian(-0.7, &[-1.1, -2.3]).unwrap();
    let a = extension_direct(&g, &p, &quad).unwrap();
    let b = extension_direct(&g, &q, &quad).unwrap();
    assert!((a - b.conj()).norm() < 1e-9);
    let b = extension_modal(&g, &q, &quad).unwrap();
    assert!((a - b.conj()).norm() < 1e-9);
}

#[test]
fn parabolic_rescaling_identity() {
    let quad = QuadratureSpec::default();
    let modes = vec![
        Mode { index: ModeIndex::new(2, 1, 1).unwrap(), profile: profile(1.5, 0.4, 1.0, 0.5) },
        Mode { index: ModeIndex::new(2, 3, 2).unwrap(), profile: profile(1.4, 0.3, -0.4, 0.0) },
    ];
    let g = SurfaceFunction::new(2, modes).unwrap();
    assert_eq!(rescale_dyadic(&g, 1.0), g);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in [2.0f64, 4.0, 8.0] {
        let gm = rescale_dyadic(&g, m);
        let (lo, hi) = gm.radial_support().unwrap();
        assert!(lo >= m && hi <= 2.0 * m);
        for _ in 0..6 {
            let p = random_point(&mut rng, 2, 0.3, 1.5);
            let lhs = extension_modal(&gm, &p, &quad).unwrap();
            let q = SpacetimePoint { t: m * m * p.t, r: m * p.r, dir: p.dir.clone() };
            let rhs = extension_modal(&g, &q, &quad).unwrap() * m.powi(2);
            assert!((lhs - rhs).norm() <= 1e-8, "M={m}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn parseval_on_the_circle_and_sphere() {
    let modes = vec![
        Mode { index: ModeIndex::new(2, 0, 1).unwrap(), profile: profile(1.5, 0.4, 1.0, 0.0) },
        Mode { index: ModeIndex::new(2, 4, 2).unwrap(), profile: profile(1.5, 0.3, 0.2, 0.9) },
    ];
    let g = SurfaceFunction::new(2, modes).unwrap();
    let (l, r) = parseval_check(&g, 1.45).unwrap();
    assert!((l - r).abs() <= 1e-10);
    let modes = vec![
        Mode { index: ModeIndex::new(3, 2, 4).unwrap(), profile: profile(1.5, 0.4, 1.0, 0.0) },
        Mode { index: ModeIndex::new(3, 5, 1).unwrap(), profile: profile(1.5, 0.3, 0.2, 0.9) },
    ];
    let g = SurfaceFunction::new(3, modes).unwrap();
    let (l, r) = parseval_check(&g, 1.55).unwrap();
    assert!((l - r).abs() <= 1e-10);
}

#[test]
fn model_operators_basic_properties() {
    let quad = QuadratureSpec::default();
    let a = profile(1.5, 0.45, 1.0, 0.0);
    let zero = profile(1.5, 0.45, 0.0, 0.0);
    let big_r = 256.0;
    assert_eq!(op_t(2, 1.0, &zero, big_r, 0.3, 200.0, &quad).unwrap(), Complex64::new(0.0, 0.0));
    assert_eq!(op_h(2, 4.0, &zero, big_r, 0.3, 200.0, &quad).unwrap(), Complex64::new(0.0, 0.0));
    // outside the annulus
    assert_eq!(op_t(2, 1.0, &a, big_r, 0.3, 100.0, &quad).unwrap(), Complex64::new(0.0, 0.0));
    assert_eq!(op_h(2, 1.0, &a, big_r, 0.3, 300.0, &quad).unwrap(), Complex64::new(0.0, 0.0));
    // linearity
    let a2 = a.scaled(Complex64::new(0.0, 3.0));
    let v1 = op_t(2, 4.0, &a, big_r, 1.7, 180.0, &quad).unwrap();
    let v2 = op_t(2, 4.0, &a2, big_r, 1.7, 180.0, &quad).unwrap();
    assert!((v2 - v1 * Complex64::new(0.0, 3.0)).norm() < 1e-14);
    // the remainder is much smaller than the main part
    let h = op_h(2, 4.0, &a, big_r, 1.7, 180.0, &quad).unwrap();
    assert!(v1.norm() < 0.05 * h.norm(), "{v1} vs {h}");
    // outside the oscillatory domain
    assert!(op_t(2, 40.0, &a, 64.0, 0.0, 36.0, &quad).is_err());
    assert!(op_h(2, 40.0, &a, 64.0, 0.0, 36.0, &quad).is_err());
}

#[test]
fn remainder_is_j_minus_main_term() {
    let b = rlab_core::besself::BesselJ::<f64>::new(3.0);
    let z = 40.0;
    let h = bessel_remainder(&b, z).unwrap();
    let d = rlab_core::besself::bc_decompose(3.0, z, 1.0).unwrap();
    assert!((h + d.main - b.value(z).unwrap()).abs() < 1e-15);
    assert!(h.abs() < 1.0 / z);
}

fn chi4_over_u2() -> f64 {
    let rule = gauss_legendre(16);
    integrate_breaks(&mut |u: f64| chi(u).powi(4) / (u * u), &uniform_breaks(0.5, 1.0, 64), &rule)
}

#[test]
fn kernel_diagonal_and_conjugation() {
    let quad = QuadratureSpec::default();
    let c = chi4_over_u2();
    for big_r in [128.0f64, 512.0] {
        let k = kernel_k(big_r, 0.0, [1.0; 4], &quad).unwrap();
        assert!(k.im.abs() < 1e-14);
        assert!((k.re * big_r - c).abs() < 1e-9 * c, "{} vs {c}", k.re * big_r);
    }
    let rho = [1.1, 1.4, 1.7, 1.25];
    let a = kernel_k(256.0, 2.0, rho, &quad).unwrap();
    let b = kernel_k(256.0, 2.0, [rho[1], rho[0], rho[3], rho[2]], &quad).unwrap();
    assert!((a - b.conj()).norm() < 1e-12);
    assert!(kernel_k(16.0, 10.0, [1.0; 4], &quad).is_err());
}

#[test]
fn schrodinger_at_time_zero_is_the_inverse_transform() {
    let quad = QuadratureSpec::default();
    let u0 = single(2, 1, 2, profile(1.5, 0.4, 1.0, 0.0)).rescaled(3.0);
    let x = [0.4, -0.9];
    let p = SpacetimePoint::from_cartesian(0.0, &x).unwrap();
    let v = schrodinger_evolve(&u0, &p, &quad).unwrap();
    // ∫ û₀(ξ) e^{ix·ξ} dξ = (f dσ)^∨(0, x/2π) for g = û₀
    let tau = std::f64::consts::TAU;
    let q = SpacetimePoint::from_cartesian(0.0, &[x[0] / tau, x[1] / tau]).unwrap();
    let expect = extension_direct(&u0, &q, &quad).unwrap();
    assert!((v - expect).norm() < 1e-9 * (1.0 + expect.norm()));
}

#[test]
fn schrodinger_mass_is_conserved() {
    // one mode: ‖u(t)‖² = ∫ |c_t(r)|² r dr, and ‖u₀‖² = (2π)² ∫ |a(ρ)|² ρ dρ
    let quad = QuadratureSpec::default();
    let a = profile(1.5, 0.4, 1.0, 0.0);
    let u0 = single(2, 2, 1, a.clone());
    let g = schrodinger_surface(&u0);
    let tau = std::f64::consts::TAU;
    let rule = gauss_legendre(16);
    let mass0 = tau * tau * integrate_breaks(&mut |r: f64| a.eval(r).norm_sqr() * r, &uniform_breaks(1.0, 2.0, 32), &rule);
    for t in [0.0, 0.5, 1.5] {
        let r_max = 4.0 * t + 160.0;
        let panels = (r_max * 2.0) as usize;
        let m: f64 = integrate_breaks(
            &mut |r: f64| {
                let c = mode_field(&g.modes()[0], g.scale(), tau * t, r, &quad).unwrap() * tau.powi(2);
                c.norm_sqr() * r
            },
            &uniform_breaks(0.0, r_max, panels),
            &rule,
        );
        assert!((m - mass0).abs() < 1e-6 * mass0, "t={t}: {m} vs {mass0}");
    }
}

#[test]
fn oscillatory_operator_on_a_narrow_bump_tracks_the_kernel() {
    let quad = QuadratureSpec::default();
    let (big_r, r, nu, rho0) = (256.0, 192.0, 4.0, 1.5);
    let expected_unit = chi(r / big_r) * rlab_core::besself::i_nu(nu, r * rho0).unwrap().norm() * rho0;
    let mut errs = Vec::new();
    for w in [1e-3, 3e-4, 1e-4] {
        let a = profile(rho0, w, 1.0, 0.0);
        let l1 = integrate_breaks(&mut |x: f64| a.eval(x).norm(), &uniform_breaks(rho0 - w, rho0 + w, 8), &gauss_legendre(16));
        let h = op_h(2, nu, &a, big_r, 0.4, r, &quad).unwrap();
        errs.push((h.norm() / (expected_unit * l1) - 1.0).abs());
    }
    assert!(errs[2] < errs[0] && errs[2] < 0.1, "{errs:?}");
}
