use super::restriction::test_profile;
use super::{Criterion, Sample, ScalingReport, SuiteConfig};
use crate::error::Result;
use crate::norms::{exponent_table, lq_space_norms, lq_spacetime_norms, Domain, ExtensionField};
use crate::spherical::{angular_weight, Mode, ModeIndex, SurfaceFunction};
use num_complex::Complex64;

/// Factor applied to the data for the linearity check.
const LAMBDA: f64 = 3.0;

/// `û₀` with a single mode of degree `k` supported in `N/2·[1.05, 1.95] ⊂ {|ξ| ≤ N}`.
fn data(n: usize, k: usize, big_n: f64) -> Result<SurfaceFunction<f64>> {
    SurfaceFunction::with_scale(n, vec![Mode { index: ModeIndex::new(n, k, 1)?, profile: test_profile() }], 0.5 * big_n)
}

/// `(‖e^{itΔ}(1−Δ_θ)^{−s/2}u₀‖_{L^q([0,1]×ℝⁿ)}, ‖u₀‖_{L^q})` for each `q`.
fn measure(cfg: &SuiteConfig, u0_hat: &SurfaceFunction<f64>, qs: &[f64], ss: &[f64]) -> Result<Vec<(f64, f64, f64, f64)>> {
    let n = u0_hat.n();
    let rhs = lq_space_norms(&ExtensionField::schrodinger(u0_hat, &cfg.quad)?, qs, 0.0, &cfg.grid)?;
    qs.iter()
        .zip(ss)
        .zip(&rhs)
        .map(|((&q, &s), r)| {
            let f = ExtensionField::schrodinger(u0_hat, &cfg.quad)?.with_mode_weights(|m| angular_weight(n, m.k(), -s));
            let l = &lq_spacetime_norms(&f, &[q], Domain::Slab { t_end: 1.0 }, &cfg.grid)?[0];
            Ok((l.value, r.value, l.quad_error.max(r.quad_error), l.tail_bound.max(r.tail_bound)))
        })
        .collect()
}

pub fn suite_local_smoothing(cfg: &SuiteConfig) -> Result<Vec<ScalingReport>> {
    let n = cfg.n;
    let nf = n as f64;
    let ss: Vec<f64> = cfg.q.iter().map(|&q| exponent_table(n, q).map(|t| t.s)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for &k in &cfg.modes {
        let rows: Vec<(f64, Vec<(f64, f64, f64, f64)>)> = cfg
            .frequencies
            .iter()
            .map(|&big_n| Ok((big_n, measure(cfg, &data(n, k, big_n)?, &cfg.q, &ss)?)))
            .collect::<Result<_>>()?;
        for (qi, &q) in cfg.q.iter().enumerate() {
            let beta = (2.0 * nf * (0.5 - 1.0 / q) - 2.0 / q).max(0.0);
            let samples = rows
                .iter()
                .map(|(big_n, v)| {
                    let (lhs, rhs, qe, tail) = v[qi];
                    let mut s = Sample::exact(*big_n, lhs, rhs).exponents(n, q, q, ss[qi]);
                    s.quad_error = qe;
                    s.tail_bound = tail;
                    s
                })
                .collect();
            out.push(ScalingReport::new(
                format!("smoothing.q{q:.4}.k{k}"),
                format!("L^q([0,1] x R^n) norm of the angularly smoothed evolution against ||u0||_q grows at most like N^{beta:.4} (n={n}, k={k}, s={:.4})", ss[qi]),
                "N",
                Criterion::SlopeAtMost { predicted: beta, margin: cfg.margin },
                samples,
            ));
        }
    }

    if let (Some(&big_n), Some(&k)) = (cfg.frequencies.first(), cfg.modes.first()) {
        let g = data(n, k, big_n)?;
        let base = measure(cfg, &g, &cfg.q, &ss)?;
        let scaled = measure(cfg, &g.scaled_by(Complex64::new(LAMBDA, 0.0)), &cfg.q, &ss)?;
        let samples = base
            .iter()
            .zip(&scaled)
            .zip(&cfg.q)
            .map(|((a, b), &q)| {
                let dev = (b.0 / (LAMBDA * a.0) - 1.0).abs().max((b.1 / (LAMBDA * a.1) - 1.0).abs());
                Sample::exact(big_n, dev, 1.0).exponents(n, q, q, 0.0)
            })
            .collect();
        out.push(ScalingReport::new(
            "smoothing.linearity",
            format!("relative deviation of both norms from linear scaling under u0 -> {LAMBDA} u0"),
            "N",
            Criterion::AtMost { tol: 1e-9 },
            samples,
        ));
    }
    Ok(out)
}
