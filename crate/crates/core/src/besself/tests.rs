use super::*;

/// Ascending series, usable where `(r/2)^2` is modest.
fn ascending(nu: f64, r: f64) -> f64 {
    let x = r / 2.0;
    let mut term = (nu * x.ln() - ln_gamma_f64(nu + 1.0)).exp();
    let mut sum = term;
    for m in 1..200 {
        term *= -x * x / (m as f64 * (m as f64 + nu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn series_spec_examples() {
    let q = spec();
    assert_eq!(bessel_series(0.0f64, 0.0, &q).unwrap().value, 1.0);
    assert!(bessel_series(0.5f64, std::f64::consts::PI, &q).unwrap().value.abs() < 1e-12);
    let v = bessel_series(2.0f64, 1.0, &q).unwrap().value;
    assert!((v - ascending(2.0, 1.0)).abs() < 1e-12);
    assert!((v - 0.114_903_484_931_900_5).abs() < 1e-12);
}

#[test]
fn series_matches_ascending_series() {
    let q = spec();
    for &nu in &[0.0, 0.3, 1.0, 2.5, 7.0, 12.25] {
        for &r in &[0.05, 0.5, 1.0, 3.0, 6.0] {
            let v = bessel_series(nu, r, &q).unwrap();
            let want = ascending(nu, r);
            assert!((v.value - want).abs() < 1e-11, "nu={nu} r={r}: {} vs {want}", v.value);
            assert!(v.est_error <= q.tolerance);
        }
    }
}

#[test]
fn schlafli_matches_series() {
    let q = spec();
    let a = bessel_schlafli(3.0f64, 7.0, &q).unwrap().value;
    let b = bessel_series(3.0f64, 7.0, &q).unwrap().value;
    assert!((a - b).abs() < 1e-10);
    for &nu in &[0.25f64, 1.5, 2.5, 6.75] {
        for &r in &[0.3, 2.0, 9.0, 31.0] {
            let a = bessel_schlafli(nu, r, &q).unwrap().value;
            let b = bessel_series(nu, r, &q).unwrap().value;
            assert!((a - b).abs() < 1e-9, "nu={nu} r={r}: {a} vs {b}");
        }
    }
}

#[test]
fn e_term_vanishes_for_integers_and_is_bounded_otherwise() {
    let q = spec();
    for r in [0.5, 3.0, 40.0] {
        assert_eq!(e_term(5.0f64, r, &q).unwrap(), 0.0);
    }
    let e = e_term(2.5f64, 10.0, &q).unwrap();
    assert!(e.abs() > 0.0);
    assert!(e.abs() <= 1.0 / (std::f64::consts::PI * 12.5));
}

#[test]
fn dispatcher_satisfies_recurrence() {
    // J_{ν−1} + J_{ν+1} = (2ν/r) J_ν across all methods
    for &nu in &[1.5f64, 3.0, 10.0, 40.0, 150.0] {
        for &r in &[0.7, 5.0, 30.0, 90.0, 200.0, 2000.0] {
            let q = spec();
            let jm = bessel_j(nu - 1.0, r, &q).unwrap().value;
            let j0 = bessel_j(nu, r, &q).unwrap().value;
            let jp = bessel_j(nu + 1.0, r, &q).unwrap().value;
            let lhs = jm + jp;
            let rhs = 2.0 * nu / r * j0;
            let scale = jm.abs().max(jp.abs()).max(1e-300);
            assert!((lhs - rhs).abs() <= 1e-9 * scale, "nu={nu} r={r}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn steepest_descent_matches_ascending_series() {
    let q = spec();
    for &(nu, r) in &[(5.0, 1.0), (10.0, 4.0), (20.5, 7.0), (30.0, 2.0), (8.0, 7.9)] {
        let v = bessel_j(nu, r, &q).unwrap();
        assert_eq!(v.method, BesselMethod::SteepestDescent);
        let want = ascending(nu, r);
        assert!(((v.value - want) / want).abs() < 1e-11, "nu={nu} r={r}: {} vs {want}", v.value);
    }
}

#[test]
fn log_value_survives_underflow() {
    let j = BesselJ::new(500.0f64);
    let l = j.ln_abs(10.0).unwrap();
    // leading Debye term: ln J ≈ ν(tanh α − α) − ½ ln(2πν tanh α)
    let a = (50.0f64).acosh();
    let debye = 500.0 * (a.tanh() - a) - 0.5 * (2.0 * std::f64::consts::PI * 500.0 * a.tanh()).ln();
    assert!((l - debye).abs() < 1e-3, "{l} vs {debye}");
}

#[test]
fn asymptotic_route_agrees_with_schlafli() {
    let q = spec();
    for &(nu, r) in &[(0.0f64, 30.0f64), (2.0, 60.0), (4.0, 400.0), (7.5, 120.0)] {
        let v = bessel_j(nu, r, &q).unwrap();
        assert_eq!(v.method, BesselMethod::Asymptotic);
        let s = bessel_schlafli(nu, r, &q).unwrap().value;
        assert!((v.value - s).abs() < 1e-11, "nu={nu} r={r}");
    }
}

#[test]
fn regimes_partition_with_closed_lower_boundaries() {
    assert_eq!(classify_regime(100.0, 50.0), BesselRegime::Exponential);
    assert_eq!(classify_regime(100.0, 100.0), BesselRegime::Transition);
    assert_eq!(classify_regime(100.0, 300.0), BesselRegime::Oscillatory);
    assert_eq!(classify_regime(100.0, 200.0), BesselRegime::Oscillatory);
    assert_eq!(classify_regime(100.0, 50.000001), BesselRegime::Transition);
}

#[test]
fn bound_shapes() {
    let k = FittedConstants { c: 0.2, c_exponential: 1.0, c_transition: 1.5, c_oscillatory: 2.0 };
    assert!(asymptotic_bound(40.0, 10.0, &k) > asymptotic_bound(41.0, 10.0, &k));
    assert!(asymptotic_bound(40.0, 10.0, &k) > asymptotic_bound(40.0, 11.0, &k));
    let b: f64 = asymptotic_bound(27.0, 27.0, &k);
    assert!((b - 1.5 / 3.0).abs() < 1e-14);
    let b = asymptotic_bound(10.0, 1000.0, &k);
    assert!((b / (2.0 / 1000f64.sqrt()) - 1.0).abs() < 0.04);
}

#[test]
fn crude_bound_properties() {
    let q = spec();
    let b0 = crude_bound(0.0f64, 0.0);
    assert!(b0.is_finite() && b0 > 0.0);
    for nu in 0..=20 {
        let mut prev = 0.0;
        for i in 0..=40 {
            let r = i as f64;
            let b = crude_bound(nu as f64, r);
            assert!(b >= prev);
            prev = b;
            let j = bessel_j(nu as f64, r, &q).unwrap().value;
            assert!(j.abs() <= b, "nu={nu} r={r}");
        }
    }
    assert!(crude_bound(10.0f64, 1e300).is_infinite());
}

#[test]
fn phase_derivatives() {
    assert_eq!(phase_theta(0.0f64, 3.0, 1).unwrap(), 1.0);
    assert_eq!(phase_theta(0.0f64, 3.0, 2).unwrap(), 0.0);
    assert!((phase_theta(3.0f64, 5.0, 2).unwrap() - 0.09).abs() < 1e-15);
    assert!(phase_theta(3.0f64, 3.0, 0).is_err());
    let h = 1e-4;
    for &(nu, r) in &[(2.0f64, 5.0f64), (10.0, 13.0), (0.5, 40.0)] {
        for order in 0..3u8 {
            let fd = (phase_theta(nu, r + h, order).unwrap() - phase_theta(nu, r - h, order).unwrap()) / (2.0 * h);
            let d = phase_theta(nu, r, order + 1).unwrap();
            assert!((fd - d).abs() < 1e-6 * (1.0 + d.abs()), "nu={nu} r={r} order={order}: {fd} vs {d}");
        }
    }
}

#[test]
fn decomposition_main_term() {
    let d = bc_decompose(0.0f64, 10.0, 1.0).unwrap();
    let want = (2.0 / std::f64::consts::PI).sqrt() * (10.0f64 - std::f64::consts::FRAC_PI_4).cos() / 10f64.sqrt();
    assert!((d.main - want).abs() < 1e-15);
    assert!(bc_decompose(8.0f64, 9.5, 1.0).is_err());
    let d = bc_decompose(16.0f64, 64.0, 3.0).unwrap();
    assert!((d.remainder_bound - 3.0 / 64.0).abs() < 1e-15);
}

#[test]
fn single_precision_evaluation() {
    let v = bessel_j(2.0f32, 1.0, &QuadratureSpec::default().with_tolerance(1e-6)).unwrap();
    assert!((v.value - 0.114_903_48).abs() < 1e-6);
}
