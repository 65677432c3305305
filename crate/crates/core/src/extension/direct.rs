//! Tensor-product quadrature of the defining integral, in polar coordinates of
//! `ξ`: Gauss–Legendre panels in `|ξ|`, trapezoid in azimuth and, for `n = 3`,
//! Gauss–Legendre in the cosine of the polar angle.

use super::SpacetimePoint;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, refine, uniform_breaks, QuadratureSpec};
use crate::scalar::Real;
use crate::spherical::SurfaceFunction;
use num_complex::Complex;

const ORDER: usize = 16;

pub fn extension_direct<T: Real>(
    g: &SurfaceFunction<T>,
    p: &SpacetimePoint<T>,
    quad: &QuadratureSpec,
) -> Result<Complex<T>> {
    let n = g.n();
    if p.n() != n {
        return Err(Error::DomainError(format!("point dimension {} does not match n={n}", p.n())));
    }
    if n > 3 {
        return Err(Error::UnsupportedBasis(format!("direct quadrature is implemented for n in {{2, 3}} (got {n})")));
    }
    let Some((lo, hi)) = g.radial_support() else {
        return Ok(Complex::new(T::zero(), T::zero()));
    };
    let x = p.x();
    let tau = T::TAU();
    let (lo_f, hi_f) = (lo.as_f64(), hi.as_f64());
    let rate = std::f64::consts::TAU * (p.r.as_f64() + 2.0 * p.t.as_f64().abs() * hi_f);
    let p0 = quad.panels_for(rate, hi_f - lo_f, ORDER).max(4);
    // azimuthal trapezoid: exact once the node count exceeds the band limit
    let band = std::f64::consts::TAU * p.r.as_f64() * hi_f + g.max_degree() as f64;
    let az0 = ((1.3 * band) as usize + 24).max(16);
    let rule = gauss_legendre(ORDER);
    let mut failure = None;
    let est = refine::<T, Complex<T>, _, _>(
        quad,
        "direct extension quadrature",
        |level| {
            let panels = p0 << level;
            let naz = az0 << level;
            let br = uniform_breaks(lo, hi, panels);
            let mut total = Complex::new(T::zero(), T::zero());
            for w in br.windows(2) {
                for (rho, wr) in rule.mapped(w[0], w[1]) {
                    let shell = match n {
                        2 => circle_shell(g, rho, &x, naz),
                        _ => sphere_shell(g, rho, &x, naz),
                    };
                    match shell {
                        Ok(s) => {
                            let phase = Complex::from_polar(T::one(), tau * p.t * rho * rho);
                            total = total + phase * s * (wr * rho.powi(n as i32 - 1));
                        }
                        Err(e) => failure = Some(e),
                    }
                }
            }
            (total, panels)
        },
        |v| quad.tolerance * (1.0 + v.norm().as_f64()),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(est.value)
}

/// `∫_{S¹} g(ρω) e^{2πiρ x·ω} dω`.
fn circle_shell<T: Real>(g: &SurfaceFunction<T>, rho: T, x: &[T], naz: usize) -> Result<Complex<T>> {
    let tau = T::TAU();
    let h = tau / T::from_usize_lossy(naz);
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..naz {
        let a = h * T::from_usize_lossy(j);
        let dir = [a.cos(), a.sin()];
        let v = g.eval_polar(rho, &dir)?;
        let ph = tau * rho * (x[0] * dir[0] + x[1] * dir[1]);
        acc = acc + v * Complex::from_polar(T::one(), ph);
    }
    Ok(acc * h)
}

/// `∫_{S²} g(ρω) e^{2πiρ x·ω} dω`.
fn sphere_shell<T: Real>(g: &SurfaceFunction<T>, rho: T, x: &[T], naz: usize) -> Result<Complex<T>> {
    let tau = T::TAU();
    let npolar = naz / 2 + 8;
    let rule = gauss_legendre(npolar);
    let h = tau / T::from_usize_lossy(naz);
    let mut acc = Complex::new(T::zero(), T::zero());
    for (z, wz) in rule.mapped(-T::one(), T::one()) {
        let s = ((T::one() - z) * (T::one() + z)).sqrt();
        let mut ring = Complex::new(T::zero(), T::zero());
        for j in 0..naz {
            let a = h * T::from_usize_lossy(j);
            let dir = [s * a.cos(), s * a.sin(), z];
            let v = g.eval_polar(rho, &dir)?;
            let ph = tau * rho * (x[0] * dir[0] + x[1] * dir[1] + x[2] * dir[2]);
            ring = ring + v * Complex::from_polar(T::one(), ph);
        }
        acc = acc + ring * (wz * h);
    }
    Ok(acc)
}
