use super::{Criterion, Sample, ScalingReport, SuiteConfig};
use crate::error::Result;
use crate::extension::{extension_direct, extension_modal, SpacetimePoint};
use crate::spherical::{harmonic_dimension, parseval_check, Mode, ModeIndex, RadialProfile, SurfaceFunction};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::TAU;

fn random_point(rng: &mut ChaCha8Rng, n: usize, t_max: f64, x_max: f64) -> Result<SpacetimePoint<f64>> {
    let t = rng.random_range(-t_max..t_max);
    let r = rng.random_range(0.0..x_max);
    let a = rng.random_range(0.0..TAU);
    let dir = if n == 2 {
        vec![a.cos(), a.sin()]
    } else {
        let z: f64 = rng.random_range(-1.0..1.0);
        let s = (1.0 - z * z).sqrt();
        vec![s * a.cos(), s * a.sin(), z]
    };
    SpacetimePoint::polar(t, r, dir)
}

fn profile(rng: &mut ChaCha8Rng, real: bool) -> Result<RadialProfile<f64>> {
    let w = rng.random_range(0.2..0.5);
    let c = rng.random_range(1.0 + w..2.0 - w);
    let im = if real { 0.0 } else { rng.random_range(-1.0..1.0) };
    RadialProfile::bump(c, w, Complex64::new(rng.random_range(0.5..1.5), im))
}

/// Every label of every degree in `modes`, each with its own random profile.
fn mixture(rng: &mut ChaCha8Rng, n: usize, modes: &[usize], real: bool) -> Result<SurfaceFunction<f64>> {
    let mut out = Vec::new();
    for &k in modes {
        for l in 1..=harmonic_dimension(n, k) {
            out.push(Mode { index: ModeIndex::new(n, k, l)?, profile: profile(rng, real)? });
        }
    }
    SurfaceFunction::new(n, out)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

pub fn suite_identities(cfg: &SuiteConfig) -> Result<Vec<ScalingReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let quad = cfg.quad;
    let mut out = Vec::new();

    // Parseval on the sphere, relative to the coefficient norm
    let mut samples = Vec::new();
    for n in [2usize, 3] {
        let g = mixture(&mut rng, n, &cfg.modes, false)?;
        let mut dev = 0.0f64;
        for i in 0..=20 {
            let rho = 1.0 + i as f64 / 20.0;
            let (a, b) = parseval_check(&g, rho)?;
            if b > 0.0 {
                dev = dev.max((a - b).abs() / b);
            }
        }
        samples.push(Sample::exact(n as f64, dev, 1.0));
    }
    out.push(ScalingReport::new(
        "identities.parseval",
        "relative gap between the L2 norm on the sphere and the coefficient norm, all labels of the configured degrees",
        "n",
        Criterion::AtMost { tol: 1e-10 },
        samples,
    ));

    // modal against direct quadrature, single modes, n = cfg.n
    let n = cfg.n;
    let (points, t_max, x_max) = if n == 2 { (cfg.points, 2.0, 8.0) } else { ((cfg.points / 10).max(3), 0.5, 2.0) };
    let mut jobs = Vec::new();
    for &k in &cfg.modes {
        for l in 1..=harmonic_dimension(n, k).min(2) {
            let g = SurfaceFunction::single(ModeIndex::new(n, k, l)?, profile(&mut rng, false)?)?;
            let pts: Vec<SpacetimePoint<f64>> = (0..points).map(|_| random_point(&mut rng, n, t_max, x_max)).collect::<Result<_>>()?;
            jobs.push((k, g, pts));
        }
    }
    let samples: Vec<Sample> = jobs
        .par_iter()
        .map(|(k, g, pts)| {
            let mut dev = 0.0f64;
            for p in pts {
                dev = dev.max((extension_direct(g, p, &quad)? - extension_modal(g, p, &quad)?).norm());
            }
            Ok(Sample::exact(*k as f64, dev, 1.0).exponents(n, 0.0, 0.0, 0.0))
        })
        .collect::<Result<_>>()?;
    out.push(ScalingReport::new(
        "identities.modal_direct",
        format!("max |modal - direct| over {points} random points per mode (n={n})"),
        "k",
        Criterion::AtMost { tol: 1e-6 },
        samples,
    ));

    // (g_M dσ)^∨(t, x) = M^n (g dσ)^∨(M²t, Mx)
    let g = mixture(&mut rng, n, &cfg.modes, false)?;
    let pts: Vec<SpacetimePoint<f64>> = (0..cfg.points.min(20)).map(|_| random_point(&mut rng, n, 0.5, 3.0)).collect::<Result<_>>()?;
    let samples: Vec<Sample> = cfg
        .scales
        .par_iter()
        .map(|&m| {
            let gm = g.rescaled(m);
            let mut dev = 0.0f64;
            for p in &pts {
                let lhs = extension_modal(&gm, p, &quad)?;
                let q = SpacetimePoint { t: m * m * p.t, r: m * p.r, dir: p.dir.clone() };
                let rhs = extension_modal(&g, &q, &quad)? * m.powi(n as i32);
                dev = dev.max(rel(lhs, rhs));
            }
            Ok(Sample::exact(m, dev, 1.0).exponents(n, 0.0, 0.0, 0.0))
        })
        .collect::<Result<_>>()?;
    out.push(ScalingReport::new(
        "identities.rescaling",
        format!("relative deviation from the parabolic rescaling identity (n={n})"),
        "M",
        Criterion::AtMost { tol: 1e-8 },
        samples,
    ));

    // real g: (g dσ)^∨(−t, −x) = conj (g dσ)^∨(t, x)
    let g = mixture(&mut rng, n, &cfg.modes, true)?;
    let mut dev = 0.0f64;
    for _ in 0..cfg.points.min(20) {
        let p = random_point(&mut rng, n, 2.0, 6.0)?;
        let q = SpacetimePoint { t: -p.t, r: p.r, dir: p.dir.iter().map(|d| -d).collect() };
        dev = dev.max(rel(extension_modal(&g, &p, &quad)?.conj(), extension_modal(&g, &q, &quad)?));
    }
    out.push(ScalingReport::new(
        "identities.conjugate_symmetry",
        format!("relative deviation from conjugate symmetry for real data (n={n})"),
        "n",
        Criterion::AtMost { tol: 1e-8 },
        vec![Sample::exact(n as f64, dev, 1.0)],
    ));
    Ok(out)
}
