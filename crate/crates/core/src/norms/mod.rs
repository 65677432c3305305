//! Mixed space-time norms, weighted surface norms, the exponent algebra of the
//! angular-loss restriction theorem, and log-log fitting. `f64` only.

mod angular;
mod field;
mod spacetime;

pub use angular::{harmonic_lq, sphere_area, AngularRule};
pub use field::{ExtensionField, Layout, ModelField, SpaceTimeField};
pub use spacetime::{lq_space_norms, lq_spacetime_norm, lq_spacetime_norms, Domain, MixedNormSpec, NormGrid, NormResult};

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate_breaks, refine, uniform_breaks, QuadratureSpec};
use crate::spherical::{angular_weight, ModeIndex, SurfaceFunction};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `‖(1+|Ω|)^s g‖_{L^p(dσ)}` with `dσ = ρ^{n−1} dρ dω`.
pub fn lp_surface_norm(g: &SurfaceFunction<f64>, p: f64, s: f64) -> Result<f64> {
    let n = g.n();
    weighted_surface_norm(g, p, |m| angular_weight::<f64>(n, m.k(), s))
}

/// Per-degree weight `(1+k)^{2(n−1)(1/2−1/q)}` used for small-radius bounds.
pub fn degree_weight(n: usize, k: usize, q: f64) -> f64 {
    (1.0 + k as f64).powf(2.0 * (n as f64 - 1.0) * (0.5 - 1.0 / q))
}

/// `‖Σ w(m) a_m Y_m‖_{L^p(dσ)}` for an arbitrary per-mode weight.
pub fn weighted_surface_norm(g: &SurfaceFunction<f64>, p: f64, w: impl Fn(&ModeIndex) -> f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::DomainError(format!("surface exponent must be finite and >= 1 (got {p})")));
    }
    let Some((lo, hi)) = g.radial_support() else {
        return Ok(0.0);
    };
    let modes: Vec<ModeIndex> = g.modes().iter().map(|m| m.index).collect();
    let weights: Vec<f64> = modes.iter().map(&w).collect();
    let rule = AngularRule::new(&modes, p)?;
    let single = modes.len() == 1;
    let single_lp = if single { harmonic_lq(&modes[0], p)? } else { 0.0 };
    let n = g.n() as i32;
    let quad = QuadratureSpec::default();
    let gl = gauss_legendre(16);
    let mut c = vec![Complex64::new(0.0, 0.0); modes.len()];
    let mut out = [0.0];
    let est = refine::<f64, f64, _, _>(
        &quad,
        "surface norm",
        |level| {
            let panels = 8usize << level;
            let v = integrate_breaks(
                &mut |rho: f64| {
                    for (i, ci) in c.iter_mut().enumerate() {
                        *ci = g.coefficient(i, rho) * weights[i];
                    }
                    let ang = if single {
                        c[0].norm().powf(p) * single_lp
                    } else {
                        rule.integrate(&c, &[p], &mut out);
                        out[0]
                    };
                    ang * rho.powi(n - 1)
                },
                &uniform_breaks(lo, hi, panels),
                &gl,
            );
            (v, panels)
        },
        |v| 1e-12 * v.abs().max(f64::MIN_POSITIVE),
    )?;
    Ok(est.value.max(0.0).powf(1.0 / p))
}

/// Weighted `ℓ²` norm of the mode profiles, `(Σ_m w_m² ‖a_m‖²_{L²(ρ^{n−1}dρ)})^{1/2}`.
pub fn coefficient_l2(g: &SurfaceFunction<f64>, s: f64) -> Result<f64> {
    let mut total = 0.0;
    for m in g.modes() {
        let one = SurfaceFunction::with_scale(g.n(), vec![m.clone()], g.scale())?;
        let v = lp_surface_norm(&one, 2.0, 0.0)? * angular_weight::<f64>(g.n(), m.index.k(), s);
        total += v * v;
    }
    Ok(total.sqrt())
}

/// Exponents of the angular-loss restriction estimate at `(n, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTable {
    pub n: usize,
    pub q: f64,
    /// Offset applied to the endpoint exponents.
    pub eps: f64,
    /// Endpoint of the multilinear range.
    pub q_n: f64,
    pub q0: f64,
    pub q1: f64,
    /// Interpolation parameter, clamped to `[0, 1]`.
    pub alpha: f64,
    /// Whether `alpha` was clamped (then the interpolation identity is not exact).
    pub clamped: bool,
    pub sigma: f64,
    /// Angular derivatives lost, `σα`.
    pub s: f64,
    /// Surface exponent on the scaling line `(n+2)/q = n/p′`.
    pub p_dual: f64,
}

pub const EXPONENT_EPS: f64 = 0.01;

/// `q(n)` by `n mod 3`.
pub fn restriction_endpoint(n: usize) -> f64 {
    let m = n as f64;
    match n % 3 {
        2 => 2.0 * (4.0 * m + 7.0) / (4.0 * m + 1.0),
        0 => (2.0 * m + 3.0) / m,
        _ => 4.0 * (m + 2.0) / (2.0 * m + 1.0),
    }
}

pub fn exponent_table(n: usize, q: f64) -> Result<ExponentTable> {
    exponent_table_with_eps(n, q, EXPONENT_EPS)
}

pub fn exponent_table_with_eps(n: usize, q: f64, eps: f64) -> Result<ExponentTable> {
    if n < 2 {
        return Err(Error::DomainError(format!("dimension must be >= 2 (got {n})")));
    }
    let crit = 2.0 * (n as f64 + 1.0) / n as f64;
    if !(q > crit) || !q.is_finite() {
        return Err(Error::DomainError(format!("q must exceed 2(n+1)/n = {crit} (got {q})")));
    }
    let q_n = restriction_endpoint(n);
    let q0 = crit + eps;
    let q1 = q_n + eps;
    let raw = (1.0 / q - 1.0 / q1) / (1.0 / q0 - 1.0 / q1);
    let alpha = raw.clamp(0.0, 1.0);
    let sigma = (n as f64 - 1.0) * (0.5 - 1.0 / q0);
    Ok(ExponentTable {
        n,
        q,
        eps,
        q_n,
        q0,
        q1,
        alpha,
        clamped: alpha != raw,
        sigma,
        s: sigma * alpha,
        p_dual: n as f64 * q / (n as f64 + 2.0),
    })
}

/// Least-squares line through `(ln scale, ln norm)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    /// `ln C` in `norm ≈ C·scale^slope`.
    pub intercept: f64,
    /// Largest `|ln norm − fitted|`.
    pub max_residual: f64,
    pub samples: Vec<(f64, f64)>,
}

impl ScalingFit {
    pub fn constant(&self) -> f64 {
        self.intercept.exp()
    }

    /// Slope not above `predicted + margin`.
    pub fn at_most(&self, predicted: f64, margin: f64) -> bool {
        self.slope <= predicted + margin
    }

    /// Slope within `margin` of `predicted`.
    pub fn matches(&self, predicted: f64, margin: f64) -> bool {
        (self.slope - predicted).abs() <= margin
    }
}

pub fn fit_scaling(samples: &[(f64, f64)]) -> Result<ScalingFit> {
    if samples.len() < 3 {
        return Err(Error::DegenerateData(format!("need at least 3 samples (got {})", samples.len())));
    }
    if samples.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite()) {
        return Err(Error::DegenerateData("scales and norms must be positive and finite".into()));
    }
    let mut xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    xs.sort_by(f64::total_cmp);
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DegenerateData("scales must be distinct".into()));
    }
    let lx: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ly: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).abs()).fold(0.0, f64::max);
    Ok(ScalingFit { slope, intercept, max_residual, samples: samples.to_vec() })
}
