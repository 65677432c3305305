//! Radial factor of a single mode of the inverse Fourier transform:
//! `2π i^k r^{−(n−2)/2} ∫ J_{ν(k)}(2πrρ) a(ρ) ρ^{n/2} dρ`.

use super::{ModeIndex, RadialProfile};
use crate::besself::BesselJ;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate_breaks, refine, uniform_breaks, QuadratureSpec};
use crate::scalar::Real;
use crate::special::ln_gamma_f64;
use num_complex::Complex;

const ORDER: usize = 16;

/// `i^k`.
pub(crate) fn i_pow<T: Real>(k: usize) -> Complex<T> {
    match k % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// `∫ e^{2πitρ²} J_ν(2πrρ) a(ρ/M) ρ^{n/2} dρ` over the support of `a(·/M)`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn radial_integral<T: Real>(
    bessel: &BesselJ<T>,
    n: usize,
    profile: &RadialProfile<T>,
    scale: T,
    r: T,
    t: T,
    quad: &QuadratureSpec,
) -> Result<Complex<T>> {
    let (lo, hi) = profile.support();
    let (lo, hi) = (lo * scale, hi * scale);
    let tau = T::TAU();
    let rate = (tau * (r + T::lit(2.0) * t.abs() * hi)).as_f64();
    // the bump itself needs resolution too: ~ 24 panels across its support
    let p0 = quad.panels_for(rate, (hi - lo).as_f64(), ORDER).max(4);
    let rule = gauss_legendre(ORDER);
    let half_n = T::from_usize_lossy(n) * T::lit(0.5);
    let mut failure = None;
    let est = refine::<T, Complex<T>, _, _>(
        quad,
        "mode radial integral",
        |level| {
            let p = p0 << level;
            let br = uniform_breaks(lo, hi, p);
            let v = integrate_breaks(
                &mut |rho: T| {
                    let a = profile.eval(rho / scale);
                    if a.re == T::zero() && a.im == T::zero() {
                        return Complex::new(T::zero(), T::zero());
                    }
                    let j = match bessel.value(tau * r * rho) {
                        Ok(j) => j,
                        Err(e) => {
                            failure = Some(e);
                            T::zero()
                        }
                    };
                    let phase = Complex::from_polar(T::one(), tau * t * rho * rho);
                    phase * a * (j * rho.powf(half_n))
                },
                &br,
                &rule,
            );
            (v, p)
        },
        |v| quad.tolerance * (1.0 + v.norm().as_f64()),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(est.value)
}

pub fn hankel_mode<T: Real>(idx: &ModeIndex, a: &RadialProfile<T>, r: T, quad: &QuadratureSpec) -> Result<Complex<T>> {
    if !(r > T::zero()) {
        return Err(Error::DomainError(format!("hankel_mode needs r > 0 (got {r}); see hankel_mode_at_origin")));
    }
    let n = idx.n();
    let bessel = BesselJ::with_spec(idx.nu::<T>(), *quad);
    let integral = radial_integral(&bessel, n, a, T::one(), r, T::zero(), quad)?;
    let pref = T::TAU() * r.powf(-T::from_usize_lossy(n - 2) * T::lit(0.5));
    Ok(i_pow::<T>(idx.k()) * integral * pref)
}

/// `r → 0` limit of [`hankel_mode`]; nonzero only for `k = 0`, where it equals
/// `2π^{n/2}/Γ(n/2) ∫ a(ρ) ρ^{n−1} dρ`.
pub fn hankel_mode_at_origin<T: Real>(idx: &ModeIndex, a: &RadialProfile<T>, scale: T) -> Complex<T> {
    if idx.k() != 0 {
        return Complex::new(T::zero(), T::zero());
    }
    let n = idx.n() as f64;
    let area = T::lit(2.0 * (0.5 * n * std::f64::consts::PI.ln() - ln_gamma_f64(0.5 * n)).exp());
    let (lo, hi) = a.support();
    let rule = gauss_legendre(ORDER);
    let br = uniform_breaks(lo * scale, hi * scale, 16);
    let nm1 = T::lit(n - 1.0);
    let v: Complex<T> = integrate_breaks(&mut |rho: T| a.eval(rho / scale) * rho.powf(nm1), &br, &rule);
    v * area
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_profile_and_linearity() {
        let idx = ModeIndex::new(2, 2, 1).unwrap();
        let q = QuadratureSpec::default();
        let a = RadialProfile::bump(1.5f64, 0.4, Complex::new(0.0, 0.0)).unwrap();
        assert_eq!(hankel_mode(&idx, &a, 1.3, &q).unwrap(), Complex::new(0.0, 0.0));
        let a = RadialProfile::bump(1.5f64, 0.4, Complex::new(0.3, 0.8)).unwrap();
        let two = a.scaled(Complex::new(2.0, 0.0));
        let v1 = hankel_mode(&idx, &a, 1.3, &q).unwrap();
        let v2 = hankel_mode(&idx, &two, 1.3, &q).unwrap();
        assert!((v2 - v1 * 2.0).norm() < 1e-13);
    }

    #[test]
    fn continuous_in_r() {
        let idx = ModeIndex::new(3, 1, 1).unwrap();
        let q = QuadratureSpec::default();
        let a = RadialProfile::unit_bump(1.5f64, 0.45).unwrap();
        let mut prev = hankel_mode(&idx, &a, 0.5, &q).unwrap();
        for i in 1..40 {
            let r = 0.5 + 0.01 * i as f64;
            let v = hankel_mode(&idx, &a, r, &q).unwrap();
            // |∂_r| ≤ 2π·2·‖a ρ^{n/2}‖₁·(max of the r-factor derivative), generous
            assert!((v - prev).norm() / 0.01 < 100.0);
            prev = v;
        }
    }

    #[test]
    fn origin_limit() {
        let idx = ModeIndex::new(2, 0, 1).unwrap();
        let q = QuadratureSpec::default();
        let a = RadialProfile::unit_bump(1.5f64, 0.45).unwrap();
        let near = hankel_mode(&idx, &a, 1e-7, &q).unwrap();
        let at = hankel_mode_at_origin(&idx, &a, 1.0);
        assert!((near - at).norm() < 1e-9);
    }
}
