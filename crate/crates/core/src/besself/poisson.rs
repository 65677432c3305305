//! Poisson integral
//! `J_ν(r) = (r/2)^ν / (Γ(ν+½)√π) ∫_{-1}^{1} e^{irs}(1−s²)^{ν−½} ds`.
//!
//! Two quadrature routes: the real segment (`s = sin φ`), and the deformation of
//! the segment onto the two vertical rays `s = ±1 + iy`, which removes the
//! cancellation that the real segment suffers for large `r`.

use super::{BesselMethod, BesselValue};
use crate::error::{Error, Result};
use crate::quadrature::{
    gauss_legendre, graded_breaks, graded_breaks_left, integrate_breaks, refine, uniform_breaks, QuadratureSpec,
};
use crate::scalar::Real;
use crate::special::ln_gamma_f64;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

const ORDER: usize = 16;
const GRADE_LEVELS: usize = 28;

/// `J_ν(r)` by the Poisson integral.
pub fn bessel_series<T: Real>(nu: T, r: T, quad: &QuadratureSpec) -> Result<super::BesselValue<T>> {
    let (nu, r) = (nu.as_f64(), r.as_f64());
    if !(nu > -0.5) || !(r >= 0.0) {
        return Err(Error::DomainError(format!("series needs nu > -1/2, r >= 0 (nu={nu}, r={r})")));
    }
    let v = eval_f64(nu, r, ln_gamma_f64(nu + 0.5), quad)?;
    if v.est_error > quad.tolerance {
        return Err(Error::NonConvergent(format!(
            "Poisson integral at nu={nu}, r={r}: error {:.2e} above tolerance",
            v.est_error
        )));
    }
    Ok(BesselValue { value: T::lit(v.value), method: v.method, est_error: T::lit(v.est_error) })
}

pub(super) fn eval_f64(nu: f64, r: f64, ln_gamma_half: f64, quad: &QuadratureSpec) -> Result<BesselValue<f64>> {
    if r == 0.0 {
        let value = if nu == 0.0 { 1.0 } else { 0.0 };
        return Ok(BesselValue { value, method: BesselMethod::Series, est_error: 0.0 });
    }
    // size of the real-segment integrand relative to J; rounding error scales with it
    let real_scale = (nu * (r / 2.0).ln() - ln_gamma_f64(nu + 1.0)).exp();
    if real_scale <= 1e3 || r <= 2.0 {
        return real_segment(nu, r, ln_gamma_half, quad);
    }
    let hankel = hankel_rays(nu, r, ln_gamma_half, quad);
    match hankel {
        Ok(h) if h.est_error <= quad.tolerance || real_scale > 1e8 => Ok(h),
        Ok(h) => match real_segment(nu, r, ln_gamma_half, quad) {
            Ok(s) if s.est_error < h.est_error => Ok(s),
            _ => Ok(h),
        },
        Err(e) => real_segment(nu, r, ln_gamma_half, quad).map_err(|_| e),
    }
}

fn integer_twice(nu: f64) -> bool {
    (2.0 * nu).fract() == 0.0
}

/// `2(r/2)^ν/(Γ(ν+½)√π) ∫_0^{π/2} cos(r sin φ) cos^{2ν} φ dφ`.
fn real_segment(nu: f64, r: f64, ln_gamma_half: f64, quad: &QuadratureSpec) -> Result<BesselValue<f64>> {
    let pref = (std::f64::consts::LN_2 + nu * (r / 2.0).ln() - ln_gamma_half - 0.5 * PI.ln()).exp();
    let rule = gauss_legendre(ORDER);
    let p0 = quad.panels_for(r, FRAC_PI_2, ORDER);
    let graded = !integer_twice(nu);
    let mut abs_integral = 0.0;
    let est = refine::<f64, f64, _, _>(
        quad,
        "Poisson integral (real segment)",
        |level| {
            let p = p0 << level;
            let br = if graded {
                graded_breaks(0.0, FRAC_PI_2, p, GRADE_LEVELS + 2 * level as usize)
            } else {
                uniform_breaks(0.0, FRAC_PI_2, p)
            };
            let mut abs = 0.0;
            let v = integrate_breaks(
                &mut |phi: f64| {
                    let c = phi.cos();
                    let w = if nu == 0.0 { 1.0 } else { c.powf(2.0 * nu) };
                    let y = (r * phi.sin()).cos() * w;
                    abs += y.abs();
                    y
                },
                &br,
                &rule,
            );
            abs_integral = abs * FRAC_PI_2 / (br.len() as f64 * ORDER as f64);
            (v, p)
        },
        |_| quad.tolerance * 0.05 / pref.max(1e-300),
    )?;
    let rounding = 64.0 * f64::EPSILON * pref * abs_integral.max(est.value.abs());
    Ok(BesselValue { value: pref * est.value, method: BesselMethod::Series, est_error: pref * est.error + rounding })
}

/// Hankel-ray form:
/// `J_ν(r) = −√2 · Im(e^{−iψ} G) / (√(πr) Γ(ν+½))`, `ψ = r − νπ/2 + π/4`,
/// `G = ∫_0^∞ 2 w^{2ν} e^{−w²} (1 − i w²/(2r))^{ν−½} dw`.
fn hankel_rays(nu: f64, r: f64, ln_gamma_half: f64, quad: &QuadratureSpec) -> Result<BesselValue<f64>> {
    let rule = gauss_legendre(ORDER);
    let e = nu - 0.5;
    let ln_integrand = |w: f64| -> (f64, f64) {
        let w2 = w * w;
        let u = w2 / (2.0 * r);
        let ln_mag = std::f64::consts::LN_2 + 2.0 * nu * w.ln() - w2 + 0.5 * e * (u * u).ln_1p() - ln_gamma_half;
        let arg = -e * u.atan();
        (ln_mag, arg)
    };
    // extend the upper limit until the integrand is negligible
    let mut upper = (nu + 40.0 + 10.0 * (nu + 1.0).sqrt()).sqrt();
    while ln_integrand(upper).0 > -45.0 {
        upper *= 1.25;
        if upper > 1e4 {
            return Err(Error::NonConvergent(format!("Hankel rays at nu={nu}, r={r}: integrand does not decay")));
        }
    }
    // phase of the integrand varies at rate ≤ e·w/r; amplitude on scale ~1
    let rate = 2.0 + e.abs() * upper / r;
    let p0 = quad.panels_for(rate, upper, ORDER).max(4);
    let graded = !integer_twice(nu);
    let mut abs_integral = 0.0;
    let est = refine::<f64, Complex64, _, _>(
        quad,
        "Poisson integral (Hankel rays)",
        |level| {
            let p = p0 << level;
            let br = if graded {
                graded_breaks_left(0.0, upper, p, GRADE_LEVELS + 2 * level as usize)
            } else {
                uniform_breaks(0.0, upper, p)
            };
            let mut abs = Vec::with_capacity(br.len() * ORDER);
            let v = integrate_breaks(
                &mut |w: f64| {
                    if w == 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    let (lm, arg) = ln_integrand(w);
                    let m = lm.exp();
                    abs.push(m);
                    Complex64::from_polar(m, arg)
                },
                &br,
                &rule,
            );
            abs_integral = abs.iter().cloned().fold(0.0, f64::max) * upper;
            (v, p)
        },
        |_| quad.tolerance * 0.05 * (PI * r).sqrt() / std::f64::consts::SQRT_2,
    )?;
    let psi = r - 0.5 * nu * PI + 0.25 * PI;
    let scale = std::f64::consts::SQRT_2 / (PI * r).sqrt();
    let value = -scale * (Complex64::from_polar(1.0, -psi) * est.value).im;
    let rounding = 64.0 * f64::EPSILON * scale * abs_integral;
    Ok(BesselValue { value, method: BesselMethod::Series, est_error: scale * est.error + rounding })
}
