use super::{Criterion, Sample, ScalingReport, SuiteConfig};
use crate::besself::{bc_decompose, bessel_schlafli, bessel_series, regime_shape, remainder_shape, BesselJ};
use crate::error::Result;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points).map(|j| lo + (hi - lo) * j as f64 / (points - 1).max(1) as f64).collect()
}

pub fn suite_bessel_regimes(cfg: &SuiteConfig) -> Result<Vec<ScalingReport>> {
    let quad = cfg.quad;
    let points = cfg.points.max(2);
    let mut out = Vec::new();

    // integer orders: two independent integral representations
    let rs = grid(0.1, 50.0, points);
    let cross: Vec<Sample> = (0..=20u32)
        .into_par_iter()
        .map(|nu| {
            let mut dev = 0.0f64;
            for &r in &rs {
                let a = bessel_series(f64::from(nu), r, &quad)?.value;
                let b = bessel_schlafli(f64::from(nu), r, &quad)?.value;
                dev = dev.max((a - b).abs());
            }
            Ok(Sample::exact(f64::from(nu), dev, 1.0))
        })
        .collect::<Result<_>>()?;
    out.push(ScalingReport::new(
        "bessel.cross_validation",
        "max |series - Schlafli| over r in [0.1, 50], integer orders up to 20",
        "nu",
        Criterion::AtMost { tol: 1e-8 },
        cross,
    ));

    let mut dev = 0.0f64;
    for &r in &rs {
        let v = bessel_series(0.5, r, &quad)?.value;
        dev = dev.max((v - (2.0 / (PI * r)).sqrt() * r.sin()).abs());
    }
    out.push(ScalingReport::new(
        "bessel.half_order",
        "max |J_1/2 - sqrt(2/(pi r)) sin r| over r in [0.1, 50]",
        "nu",
        Criterion::AtMost { tol: 1e-10 },
        vec![Sample::exact(0.5, dev, 1.0)],
    ));

    // r <= nu/2: |J| <= exp(-c (nu + r)) with c fitted as the smallest admissible rate
    let rates: Vec<(f64, f64, f64)> = cfg
        .nu
        .par_iter()
        .map(|&nu| {
            let j = BesselJ::with_spec(nu, quad);
            let mut c = f64::INFINITY;
            for i in 1..=points {
                let r = 0.5 * nu * i as f64 / points as f64;
                c = c.min(-j.ln_abs(r)? / (nu + r));
            }
            Ok((nu, c.max(1e-3), c))
        })
        .collect::<Result<_>>()?;
    out.push(
        ScalingReport::new(
            "bessel.exponential",
            "fitted rate c in |J_nu(r)| <= exp(-c(nu+r)) for r <= nu/2",
            "nu",
            Criterion::AtLeast { min: 1e-3 },
            rates.iter().map(|&(nu, _, c)| Sample::exact(nu, c, 1.0)).collect(),
        )
        .with_note(format!("floored c = {:.6}", rates.iter().map(|r| r.1).fold(f64::INFINITY, f64::min))),
    );
    let c_floor = rates.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);

    // nu/2 < r < 2nu: C_nu = max |J| / (nu^{-1/3}(nu^{-1/3}|r-nu|+1)^{-1/4})
    let transition: Vec<Sample> = cfg
        .nu
        .par_iter()
        .map(|&nu| {
            let j = BesselJ::with_spec(nu, quad);
            let mut c = 0.0f64;
            for i in 1..points {
                let r = nu * (0.5 + 1.5 * i as f64 / points as f64);
                c = c.max(j.value(r)?.abs() / regime_shape(nu, r, c_floor.min(1.0)));
            }
            Ok(Sample::exact(nu, c, 1.0))
        })
        .collect::<Result<_>>()?;
    out.push(ScalingReport::new(
        "bessel.transition_constant",
        "fitted C of the transition-regime bound, per order",
        "nu",
        Criterion::Stable { factor: 2.0 },
        transition,
    ));

    let diag: Vec<Sample> = cfg
        .transition_nu
        .par_iter()
        .map(|&nu| Ok(Sample::exact(nu, BesselJ::with_spec(nu, quad).value(nu)?.abs(), 1.0)))
        .collect::<Result<_>>()?;
    out.push(ScalingReport::new(
        "bessel.transition_slope",
        "log-log slope of |J_nu(nu)| against nu",
        "nu",
        Criterion::SlopeNear { predicted: -1.0 / 3.0, margin: 0.02 },
        diag,
    ));

    // r >= 2nu: project onto r^{-1/2}(A cos r + B sin r) over one period; residual times r stays bounded
    let projected: Vec<Sample> = cfg
        .oscillatory_nu
        .par_iter()
        .map(|&nu| {
            let j = BesselJ::with_spec(nu, quad);
            let (lo, hi) = (2.0 * nu.max(1.0), 100.0 * nu.max(1.0));
            let windows = 40;
            let mut c = 0.0f64;
            for w in 0..windows {
                let r0 = lo * (hi / lo).powf(w as f64 / (windows - 1) as f64);
                c = c.max(window_residual(&j, r0)?);
            }
            Ok(Sample::exact(nu, c, 1.0))
        })
        .collect::<Result<_>>()?;
    out.push(ScalingReport::new(
        "bessel.oscillatory_projection",
        "max r |J - r^{-1/2}(a_+ e^{ir} + a_- e^{-ir})| with a_+- projected per period, r in [2nu, 100nu]",
        "nu",
        Criterion::Bounded,
        projected,
    ));

    let remainder: Vec<Sample> = cfg
        .oscillatory_nu
        .par_iter()
        .map(|&nu| {
            let j = BesselJ::with_spec(nu, quad);
            let lo = nu + nu.cbrt();
            let mut c = 0.0f64;
            for i in 1..=points {
                let r = lo * (100.0f64).powf(i as f64 / points as f64);
                let d = bc_decompose(nu, r, 1.0)?;
                c = c.max((j.value(r)? - d.main).abs() / remainder_shape(nu, r));
            }
            Ok(Sample::exact(nu, c, 1.0))
        })
        .collect::<Result<_>>()?;
    out.push(ScalingReport::new(
        "bessel.bc_remainder",
        "fitted C in |J - main term| <= C * remainder shape on r > nu + nu^{1/3}",
        "nu",
        Criterion::Bounded,
        remainder,
    ));
    Ok(out)
}

/// `max r·|J(r) − r^{−1/2}(A cos r + B sin r)|` over `[r0, r0 + 2π]`, `A, B` by least squares.
fn window_residual(j: &BesselJ<f64>, r0: f64) -> Result<f64> {
    let m = 48;
    let pts: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let r = r0 + TAU * i as f64 / m as f64;
            Ok((r, j.value(r)?))
        })
        .collect::<Result<_>>()?;
    let (mut scc, mut sss, mut scs, mut syc, mut sys) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(r, y) in &pts {
        let (c, s) = (r.cos() / r.sqrt(), r.sin() / r.sqrt());
        scc += c * c;
        sss += s * s;
        scs += c * s;
        syc += y * c;
        sys += y * s;
    }
    let det = scc * sss - scs * scs;
    let a = (syc * sss - sys * scs) / det;
    let b = (sys * scc - syc * scs) / det;
    Ok(pts
        .iter()
        .map(|&(r, y)| r * (y - (a * r.cos() + b * r.sin()) / r.sqrt()).abs())
        .fold(0.0, f64::max))
}
