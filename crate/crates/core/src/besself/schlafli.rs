//! Schläfli representation
//! `J_ν(r) = (1/π)∫_0^π cos(r sin θ − νθ) dθ − E_ν(r)`,
//! `E_ν(r) = (sin νπ / π) ∫_0^∞ e^{−r sinh s − νs} ds`.

use super::{BesselMethod, BesselValue};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate_breaks, refine, uniform_breaks, QuadratureSpec};
use crate::scalar::Real;
use std::f64::consts::PI;

const ORDER: usize = 16;

pub fn bessel_schlafli<T: Real>(nu: T, r: T, quad: &QuadratureSpec) -> Result<BesselValue<T>> {
    let (nu, r) = (nu.as_f64(), r.as_f64());
    if !(nu > -0.5) || !(r > 0.0) {
        return Err(Error::DomainError(format!("Schläfli needs nu > -1/2, r > 0 (nu={nu}, r={r})")));
    }
    let v = eval_f64(nu, r, quad)?;
    Ok(BesselValue { value: T::lit(v.value), method: v.method, est_error: T::lit(v.est_error) })
}

pub(super) fn eval_f64(nu: f64, r: f64, quad: &QuadratureSpec) -> Result<BesselValue<f64>> {
    let rule = gauss_legendre(ORDER);
    let p0 = quad.panels_for(r + nu.abs(), PI, ORDER);
    let main = refine::<f64, f64, _, _>(
        quad,
        "Schläfli integral",
        |level| {
            let p = p0 << level;
            let br = uniform_breaks(0.0, PI, p);
            (integrate_breaks(&mut |t: f64| (r * t.sin() - nu * t).cos(), &br, &rule) / PI, p)
        },
        |_| quad.tolerance * 0.05,
    )?;
    let (e, e_err) = e_term_f64(nu, r, quad)?;
    let value = main.value - e;
    let rounding = 16.0 * f64::EPSILON * (1.0 + (r + nu) * f64::EPSILON);
    Ok(BesselValue { value, method: BesselMethod::Schlafli, est_error: main.error + e_err + rounding })
}

/// `E_ν(r)`; exactly zero for integer `ν`.
pub fn e_term<T: Real>(nu: T, r: T, quad: &QuadratureSpec) -> Result<T> {
    e_term_f64(nu.as_f64(), r.as_f64(), quad).map(|(v, _)| T::lit(v))
}

fn e_term_f64(nu: f64, r: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    if nu.fract() == 0.0 {
        return Ok((0.0, 0.0));
    }
    let rule = gauss_legendre(ORDER);
    // panels doubling in width from h = 1/(r+ν+1) until the integrand is negligible
    let h = 1.0 / (r + nu.abs() + 1.0);
    let mut breaks = vec![0.0, h];
    while {
        let s = *breaks.last().unwrap();
        r * s.sinh() + nu * s < 60.0
    } {
        let s = *breaks.last().unwrap();
        breaks.push(2.0 * s);
    }
    let f = |s: f64| (-r * s.sinh() - nu * s).exp();
    let est = refine::<f64, f64, _, _>(
        quad,
        "E term",
        |level| {
            let split = 1usize << level;
            let mut fine = Vec::with_capacity((breaks.len() - 1) * split + 1);
            for w in breaks.windows(2) {
                let b = uniform_breaks(w[0], w[1], split);
                fine.extend_from_slice(&b[..split]);
            }
            fine.push(*breaks.last().unwrap());
            (integrate_breaks(&mut |s| f(s), &fine, &rule), fine.len())
        },
        |_| quad.tolerance * 0.01,
    )?;
    let c = (nu * PI).sin() / PI;
    Ok((c * est.value, c.abs() * est.error))
}
