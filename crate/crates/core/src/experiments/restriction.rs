use super::{Criterion, Sample, ScalingReport, SuiteConfig};
use crate::error::{Error, Result};
use crate::norms::{degree_weight, lp_surface_norm, lq_spacetime_norms, Domain, ExtensionField, NormResult};
use crate::quadrature::{gauss_legendre, integrate_breaks, uniform_breaks};
use crate::spherical::{Mode, ModeIndex, RadialProfile, SurfaceFunction};
use num_complex::Complex64;

/// Radii from which the decay estimates for `q > 2` are tested.
const LARGE_FROM: f64 = 8.0;

pub(crate) fn test_profile() -> RadialProfile<f64> {
    RadialProfile::bump(1.5, 0.45, Complex64::new(1.0, 0.0)).expect("valid bump")
}

pub(crate) fn single_mode(n: usize, k: usize, profile: RadialProfile<f64>) -> Result<SurfaceFunction<f64>> {
    SurfaceFunction::single(ModeIndex::new(n, k, 1)?, profile)
}

/// `‖a‖_{L^p(dρ)}` of a profile (the cutoff is 1 on its support).
pub(crate) fn profile_lp(a: &RadialProfile<f64>, p: f64) -> f64 {
    let (lo, hi) = a.support();
    let v = integrate_breaks(&mut |rho: f64| a.eval(rho).norm().powf(p), &uniform_breaks(lo, hi, 16), &gauss_legendre(20));
    v.powf(1.0 / p)
}

/// Surface norm on the right of the large-radius estimate for `q ∈ [4, 6]`,
/// with `p = q/(q−3)` and `(n−1)(1/2−1/q)` angular derivatives; `L²` for `q = 2`.
fn large_rhs(g: &SurfaceFunction<f64>, q: f64) -> Result<(f64, f64, f64)> {
    let n = g.n() as f64;
    if q == 2.0 {
        return Ok((lp_surface_norm(g, 2.0, 0.0)?, 2.0, 0.0));
    }
    if !(4.0..=6.0).contains(&q) {
        return Err(Error::DomainError(format!("large-radius estimate is stated for q = 2 or 4 <= q <= 6 (got {q})")));
    }
    let p = q / (q - 3.0);
    let s = (n - 1.0) * (0.5 - 1.0 / q);
    Ok((lp_surface_norm(g, p, s)?, p, s))
}

fn norm_sample(r: f64, norm: &NormResult, rhs: f64, n: usize, p: f64, s: f64) -> Sample {
    Sample::from_norm(r, norm, rhs).exponents(n, norm.q, p, s)
}

pub fn suite_localized_restriction(cfg: &SuiteConfig) -> Result<Vec<ScalingReport>> {
    let n = cfg.n;
    let nf = n as f64;
    let m = cfg.margin;
    let mut radii: Vec<f64> = cfg.radii.iter().chain(&cfg.deep_radii).cloned().collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let mut out = Vec::new();

    let mut all_modes = Vec::new();
    for &k in &cfg.modes {
        let a = test_profile();
        let g = single_mode(n, k, a.clone())?;
        all_modes.push(Mode { index: g.modes()[0].index, profile: a.clone() });
        let field = ExtensionField::new(&g, &cfg.quad)?;
        let rows: Vec<(f64, Vec<NormResult>)> = radii
            .iter()
            .map(|&r| Ok((r, lq_spacetime_norms(&field, &cfg.q, Domain::Annulus { big_r: r }, &cfg.grid)?)))
            .collect::<Result<_>>()?;
        let in_range = |r: f64| cfg.radii.contains(&r);

        for (qi, &q) in cfg.q.iter().enumerate() {
            let q_dual = q / (q - 1.0);
            let small_rhs = degree_weight(n, k, q).sqrt() * profile_lp(&g.modes()[0].profile, q_dual);
            // radii well below the first zero of the field, where the small-R law is asymptotic
            let small: Vec<Sample> = rows
                .iter()
                .filter(|(r, _)| cfg.deep_radii.contains(r))
                .map(|(r, v)| norm_sample(*r, &v[qi], small_rhs, n, q_dual, 0.0))
                .collect();
            out.push(ScalingReport::new(
                format!("restriction.small.q{q}.k{k}"),
                format!("R << 1: norm <= C R^(n/q) times the degree-weighted L^q' profile norm (n={n}, k={k})"),
                "R",
                Criterion::SlopeAtLeast { predicted: nf / q, margin: m },
                small,
            ));

            if q == 2.0 {
                let (rhs, p, s) = large_rhs(&g, q)?;
                let large: Vec<Sample> = rows
                    .iter()
                    .filter(|(r, _)| *r >= 1.0 && in_range(*r))
                    .map(|(r, v)| norm_sample(*r, &v[qi], rhs, n, p, s))
                    .collect();
                out.push(ScalingReport::new(
                    format!("restriction.q2.large.k{k}"),
                    format!("R >= 1: L2 norm on the annulus grows at most like R^(1/2) (n={n}, k={k})"),
                    "R",
                    Criterion::SlopeAtMost { predicted: 0.5, margin: m },
                    large,
                ));
                if k == 0 {
                    let small: Vec<Sample> = rows
                        .iter()
                        .filter(|(r, _)| *r <= 1.0 && in_range(*r))
                        .map(|(r, v)| norm_sample(*r, &v[qi], rhs, n, p, s))
                        .collect();
                    out.push(ScalingReport::new(
                        "restriction.q2.small.k0",
                        format!("R <= 1: L2 norm on the annulus scales like R^(n/2) (n={n}, radial data)"),
                        "R",
                        Criterion::SlopeNear { predicted: nf / 2.0, margin: m },
                        small,
                    ));
                    let deep: Vec<Sample> = rows
                        .iter()
                        .filter(|(r, _)| cfg.deep_radii.contains(r))
                        .map(|(r, v)| norm_sample(*r, &v[qi], rhs, n, p, s))
                        .collect();
                    if deep.len() >= 3 {
                        out.push(
                            ScalingReport::new(
                                "restriction.q2.deep.k0",
                                "same slope on radii well inside the first oscillation of the field",
                                "R",
                                Criterion::SlopeNear { predicted: nf / 2.0, margin: m },
                                deep,
                            )
                            .informational(),
                        );
                    }
                }
            } else if (4.0..=6.0).contains(&q) {
                let (rhs, p, s) = large_rhs(&g, q)?;
                let large: Vec<Sample> = rows
                    .iter()
                    .filter(|(r, _)| *r >= LARGE_FROM && in_range(*r))
                    .map(|(r, v)| norm_sample(*r, &v[qi], rhs, n, p, s))
                    .collect();
                out.push(ScalingReport::new(
                    format!("restriction.q{q}.k{k}"),
                    format!("R >= {LARGE_FROM}: decay at most R^((n-1)(1/q-1/2)) against the weighted L^{p:.3} surface norm (n={n}, k={k})"),
                    "R",
                    Criterion::SlopeAtMost { predicted: (nf - 1.0) * (1.0 / q - 0.5), margin: m },
                    large,
                ));
            }
        }
    }

    // all modes at once, n = 2
    if n == 2 && all_modes.len() > 1 && cfg.q.contains(&4.0) {
        let g = SurfaceFunction::new(2, all_modes)?;
        let field = ExtensionField::new(&g, &cfg.quad)?;
        let (rhs, p, s) = large_rhs(&g, 4.0)?;
        let samples: Vec<Sample> = cfg
            .radii
            .iter()
            .filter(|&&r| (LARGE_FROM..=256.0).contains(&r))
            .map(|&r| {
                let v = lq_spacetime_norms(&field, &[4.0], Domain::Annulus { big_r: r }, &cfg.grid)?;
                Ok(norm_sample(r, &v[0], rhs, n, p, s))
            })
            .collect::<Result<_>>()?;
        let ks: Vec<String> = cfg.modes.iter().map(|k| k.to_string()).collect();
        out.push(ScalingReport::new(
            "restriction.q4.multimode",
            format!("q=4 decay for the sum of modes k in {{{}}}", ks.join(",")),
            "R",
            Criterion::SlopeAtMost { predicted: -0.25, margin: m },
            samples,
        ));
    }
    Ok(out)
}
