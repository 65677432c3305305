//! Free Schrödinger evolution `e^{itΔ}u₀(x) = ∫ e^{i(x·ξ + t|ξ|²)} û₀(ξ) dξ` for
//! data with `û₀` a surface function; here `u₀(x) = ∫ e^{ix·ξ} û₀(ξ) dξ`, so
//! `‖u₀‖₂² = (2π)^n ‖û₀‖₂²`.
//!
//! With `ξ = 2πη` the evolution is `(2π)^n` times the extension of
//! `η ↦ û₀(2πη)` evaluated at `(2πt, x)`.

use super::{extension_modal, SpacetimePoint};
use crate::error::Result;
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;
use crate::spherical::SurfaceFunction;
use num_complex::Complex;

/// The surface function `η ↦ û₀(2πη)` whose extension gives the evolution.
pub fn schrodinger_surface<T: Real>(u0_hat: &SurfaceFunction<T>) -> SurfaceFunction<T> {
    u0_hat.at_scale(u0_hat.scale() / T::TAU())
}

pub fn schrodinger_evolve<T: Real>(
    u0_hat: &SurfaceFunction<T>,
    p: &SpacetimePoint<T>,
    quad: &QuadratureSpec,
) -> Result<Complex<T>> {
    let g = schrodinger_surface(u0_hat);
    let q = SpacetimePoint { t: p.t * T::TAU(), r: p.r, dir: p.dir.clone() };
    let v = extension_modal(&g, &q, quad)?;
    Ok(v * T::TAU().powi(u0_hat.n() as i32))
}
