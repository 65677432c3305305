use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rlab_core::experiments::*;
use rlab_core::quadrature::{gauss_legendre, integrate_breaks, uniform_breaks};

fn light(suite: Suite) -> SuiteConfig {
    let mut c = SuiteConfig::defaults(suite);
    match suite {
        Suite::Bessel => {
            c.set("nu", "20, 50").unwrap();
            c.set("transition_nu", "8, 16, 32").unwrap();
            c.set("oscillatory_nu", "4").unwrap();
            c.set("points", "20").unwrap();
        }
        Suite::Restriction => {
            c.set("modes", "0").unwrap();
            c.set("radii", "8, 16, 32").unwrap();
            c.set("deep_radii", "1/256, 1/128, 1/64").unwrap();
            c.set("q", "2, 4").unwrap();
        }
        Suite::Operators => {
            c.set("nu", "1").unwrap();
            c.set("radii", "128, 256, 512").unwrap();
            c.set("q", "4").unwrap();
        }
        Suite::Kernel => {
            c.set("radii", "128, 256, 512").unwrap();
            c.set("quadruples", "100").unwrap();
            c.set("draws", "2").unwrap();
        }
        Suite::Smoothing => {
            c.set("modes", "0").unwrap();
            c.set("frequencies", "2, 4, 8").unwrap();
            c.set("q", "4").unwrap();
        }
        Suite::Identities => {
            c.set("modes", "0, 1, 2").unwrap();
            c.set("points", "6").unwrap();
        }
    }
    c
}

#[test]
fn light_suites_produce_claims_and_parseable_output() {
    for suite in Suite::ALL {
        let out = run_suite(suite, &light(suite)).unwrap();
        assert!(!out.reports.is_empty());
        let header = vec![("suite".to_string(), suite.name().to_string())];
        let csv = render_csv(&out, &header).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), format!("# suite={suite}"));
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        let rows = lines.count();
        assert_eq!(rows, out.reports.iter().map(|r| r.samples.len()).sum::<usize>());
        let json: serde_json::Value = serde_json::from_str(&render_summary(&out, &header)).unwrap();
        assert_eq!(json["claims"].as_array().unwrap().len(), out.reports.len());
        assert_eq!(json["suite"], suite.name());
    }
}

#[test]
fn identities_hold_on_a_light_config() {
    let out = run_suite(Suite::Identities, &light(Suite::Identities)).unwrap();
    for r in &out.reports {
        assert_eq!(r.verdict, Verdict::Holds, "{}: {}", r.claim, r.constant);
    }
}

#[test]
fn restriction_large_radius_laws_on_a_light_config() {
    let out = run_suite(Suite::Restriction, &light(Suite::Restriction)).unwrap();
    assert!(out.find("restriction.q2.large.k0").unwrap().holds());
    assert!(out.find("restriction.q4.k0").unwrap().holds());
    let deep = out.find("restriction.q2.deep.k0").unwrap();
    assert!(deep.informational);
    assert!((deep.slope.unwrap() - 1.0).abs() < 0.05);
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let cfg = light(Suite::Kernel);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| render_csv(&run_suite(Suite::Kernel, &cfg).unwrap(), &[]).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn config_errors_are_reported() {
    let mut c = SuiteConfig::defaults(Suite::Restriction);
    assert!(c.set("radii", "1,,2").is_err());
    c.n = 5;
    assert!(run_suite(Suite::Restriction, &c).is_err());
    let mut c = SuiteConfig::defaults(Suite::Kernel);
    c.quadruples = 1;
    assert!(matches!(run_suite(Suite::Kernel, &c), Err(rlab_core::Error::DegenerateData(_))));
}

#[test]
fn resonant_quadruples_are_resonant() {
    for rho in resonant_quadruples(200, 3) {
        let lhs = rho[0] * rho[0] - rho[1] * rho[1];
        let rhs = rho[3] * rho[3] - rho[2] * rho[2];
        assert!((lhs - rhs).abs() < 1e-12);
        assert!(rho.iter().all(|r| (1.0..=2.0).contains(r)));
    }
}

fn gauss(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    integrate_breaks(&mut |x: f64| f(x), &uniform_breaks(a, b, panels), &gauss_legendre(16))
}

#[test]
fn undamped_goal_integral_is_the_l2_norm_of_the_self_convolution() {
    // with R = 0 the integral is ∫ (b*b)(s)² ds, s = ρ₁+ρ₃ = ρ₂+ρ₄
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let b = BumpMixture::random(&mut rng);
    let conv = |s: f64| gauss(|x| b.eval(x) * b.eval(s - x), 1.0, 4.0, 60);
    let expected = gauss(|s| conv(s).powi(2), 2.0, 8.0, 60);
    let got = goal_integral(&b, 0.0);
    assert!((got / expected - 1.0).abs() < 1e-4, "{got} vs {expected}");
    assert!(goal_integral(&b, 256.0) < goal_integral(&b, 64.0));
}

#[test]
fn lemma_integral_against_a_midpoint_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let b = BumpMixture::random(&mut rng);
    let (i, j) = (1, 2);
    let m = 600;
    let h = 3.0 / m as f64;
    let xs: Vec<f64> = (0..m).map(|k| 1.0 + (k as f64 + 0.5) * h).collect();
    let bs: Vec<f64> = xs.iter().map(|&x| b.eval(x)).collect();
    let shell = |d: f64, e: u32| {
        let s = 0.5f64.powi(e as i32);
        d.abs() > 0.5 * s && d.abs() <= s
    };
    let mut total = 0.0;
    for (k2, &r2) in xs.iter().enumerate() {
        for (k1, &r1) in xs.iter().enumerate() {
            if !shell(r1 - r2, i) {
                continue;
            }
            for (k3, &r3) in xs.iter().enumerate() {
                if shell(r3 - r2, j) {
                    total += bs[k2] * bs[k1] * bs[k3] * b.eval(r1 - r2 + r3);
                }
            }
        }
    }
    total *= h * h * h;
    let got = lemma_integral(&b, i, j);
    assert!((got / total - 1.0).abs() < 0.02, "{got} vs {total}");
}
