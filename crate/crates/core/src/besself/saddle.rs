//! `r < ν`: the Schläfli integral taken along the steepest-descent path,
//! `J_ν(x) = (1/π) ∫_0^π exp(x sinh u cos θ − ν u) dθ` with
//! `cosh u = (θ / sin θ) cosh α`, `cosh α = ν/x`. The integrand is positive, so
//! the value carries no cancellation and `ln J` is available directly.

use super::{BesselMethod, BesselValue};
use crate::error::Result;
use crate::quadrature::{gauss_legendre, integrate_breaks, refine, uniform_breaks, QuadratureSpec};
use std::f64::consts::PI;

const ORDER: usize = 16;

/// `θ/sin θ − 1` without cancellation near 0.
fn theta_over_sin_minus_one(t: f64) -> f64 {
    if t < 0.1 {
        let t2 = t * t;
        let tms = t * t2 * (1.0 / 6.0 - t2 * (1.0 / 120.0 - t2 * (1.0 / 5040.0 - t2 / 362_880.0)));
        tms / t.sin()
    } else {
        t / t.sin() - 1.0
    }
}

struct Path {
    nu: f64,
    x: f64,
    cosh_a_minus_one: f64,
    f0: f64,
}

impl Path {
    fn new(nu: f64, x: f64) -> Self {
        let d = (nu - x) / x;
        let alpha = (d + (d * (2.0 + d)).sqrt()).ln_1p();
        let f0 = ((nu - x) * (nu + x)).sqrt() - nu * alpha;
        Self { nu, x, cosh_a_minus_one: d, f0 }
    }

    /// `F(θ) − F(0)` where the integrand is `e^{F(θ)}`.
    fn exponent(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let ch = 1.0 + self.cosh_a_minus_one;
        let d = ch * theta_over_sin_minus_one(t) + self.cosh_a_minus_one;
        let sinh_u = (d * (2.0 + d)).sqrt();
        let u = (d + sinh_u).ln_1p();
        self.x * sinh_u * t.cos() - self.nu * u - self.f0
    }

    /// `∫_0^π e^{F(θ)−F(0)} dθ / π` with its refinement error.
    fn scaled_integral(&self, quad: &QuadratureSpec) -> Result<(f64, f64)> {
        let rule = gauss_legendre(ORDER);
        let rel = quad.tolerance * 1e-2;
        let est = refine::<f64, f64, _, _>(
            quad,
            "steepest-descent integral",
            |level| {
                let p = 2usize << level;
                let br = uniform_breaks(0.0, PI, p);
                let v = integrate_breaks(&mut |t: f64| self.exponent(t).exp(), &br, &rule);
                (v / PI, p)
            },
            |v| rel * v.abs(),
        )?;
        Ok((est.value, est.error))
    }
}

pub(super) fn eval(nu: f64, x: f64, quad: &QuadratureSpec) -> Result<BesselValue<f64>> {
    let path = Path::new(nu, x);
    let (s, err) = path.scaled_integral(quad)?;
    let scale = path.f0.exp();
    let value = scale * s;
    let est_error = scale * err + 32.0 * f64::EPSILON * value.abs() * (1.0 + nu.abs());
    Ok(BesselValue { value, method: BesselMethod::SteepestDescent, est_error })
}

pub(super) fn ln_value(nu: f64, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    let path = Path::new(nu, x);
    let (s, _) = path.scaled_integral(quad)?;
    Ok(path.f0 + s.ln())
}
