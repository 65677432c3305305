//! Mode-by-mode evaluation through the Hankel transform of each radial profile.

use super::SpacetimePoint;
use crate::besself::BesselJ;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate_breaks, uniform_breaks, QuadratureSpec};
use crate::scalar::Real;
use crate::special::ln_gamma_f64;
use crate::spherical::hankel::{i_pow, radial_integral};
use crate::spherical::{eval_harmonic, Mode, SurfaceFunction};
use num_complex::Complex;

/// Radial field of one mode at scale `M`:
/// `c(t, r) = 2π i^k r^{−(n−2)/2} ∫ e^{2πitρ²} J_ν(2πrρ) a(ρ/M) ρ^{n/2} dρ`,
/// so that the extension equals `Σ c(t, r) Y(ω)`.
pub fn mode_field<T: Real>(mode: &Mode<T>, scale: T, t: T, r: T, quad: &QuadratureSpec) -> Result<Complex<T>> {
    let n = mode.index.n();
    if r < T::zero() {
        return Err(Error::DomainError(format!("radius must be nonnegative (got {r})")));
    }
    if r == T::zero() {
        return Ok(origin_field(mode, scale, t));
    }
    let bessel = BesselJ::with_spec(mode.index.nu::<T>(), *quad);
    let integral = radial_integral(&bessel, n, &mode.profile, scale, r, t, quad)?;
    let pref = T::TAU() * r.powf(-T::from_usize_lossy(n - 2) * T::lit(0.5));
    Ok(i_pow::<T>(mode.index.k()) * integral * pref)
}

/// `r = 0`: only `k = 0` survives, with `J_ν(z) z^{−ν} → 2^{−ν}/Γ(ν+1)`.
fn origin_field<T: Real>(mode: &Mode<T>, scale: T, t: T) -> Complex<T> {
    if mode.index.k() != 0 {
        return Complex::new(T::zero(), T::zero());
    }
    let n = mode.index.n() as f64;
    let area = T::lit(2.0 * (0.5 * n * std::f64::consts::PI.ln() - ln_gamma_f64(0.5 * n)).exp());
    let (lo, hi) = mode.profile.support();
    let (lo, hi) = (lo * scale, hi * scale);
    let tau = T::TAU();
    let rate = std::f64::consts::TAU * 2.0 * t.as_f64().abs() * hi.as_f64();
    let panels = QuadratureSpec::default().panels_for(rate, (hi - lo).as_f64(), 16).max(32);
    let rule = gauss_legendre(16);
    let nm1 = T::lit(n - 1.0);
    let v: Complex<T> = integrate_breaks(
        &mut |rho: T| Complex::from_polar(T::one(), tau * t * rho * rho) * mode.profile.eval(rho / scale) * rho.powf(nm1),
        &uniform_breaks(lo, hi, panels),
        &rule,
    );
    v * area
}

pub fn extension_modal<T: Real>(
    g: &SurfaceFunction<T>,
    p: &SpacetimePoint<T>,
    quad: &QuadratureSpec,
) -> Result<Complex<T>> {
    if p.n() != g.n() {
        return Err(Error::DomainError(format!("point dimension {} does not match n={}", p.n(), g.n())));
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for m in g.modes() {
        let c = mode_field(m, g.scale(), p.t, p.r, quad)?;
        acc = acc + c * eval_harmonic(&m.index, &p.dir)?;
    }
    Ok(acc)
}
