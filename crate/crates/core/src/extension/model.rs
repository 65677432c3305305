//! Model operators on the annulus `R/2 < |x| < R`:
//!
//! `T_ν a(t, r) = χ(r/R) ∫ e^{−itρ²} h_ν(rρ) a(ρ) ρ^{n/2} φ(ρ) dρ`,
//! `H_ν a(t, r) = χ(r/R) ∫ e^{−itρ²} I_ν(rρ) a(ρ) ρ^{n/2} φ(ρ) dρ`,
//!
//! with `h_ν = J_ν − √(2/π) cos θ / (z²−ν²)^{1/4}` and
//! `I_ν = √(2/π) e^{iθ} / (z²−ν²)^{1/4}`, and the quartic kernel `K`.

use super::{chi, phi_cutoff};
use crate::besself::{bc_decompose, i_nu, phase_theta, BesselJ};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate_breaks, refine, uniform_breaks, QuadratureSpec};
use crate::scalar::Real;
use crate::spherical::RadialProfile;
use num_complex::Complex;

const ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Bessel remainder `h_ν`.
    Remainder,
    /// Oscillatory main term `I_ν`.
    Oscillatory,
}

/// `h_ν(z) = J_ν(z) − √(2/π) cos θ(z) (z²−ν²)^{−1/4}`, for `z > ν + ν^{1/3}`.
pub fn bessel_remainder<T: Real>(bessel: &BesselJ<T>, z: T) -> Result<T> {
    let d = bc_decompose(bessel.order(), z, T::one())?;
    Ok(bessel.value(z)? - d.main)
}

#[derive(Debug, Clone)]
pub struct ModelOperator<T> {
    pub kind: ModelKind,
    pub n: usize,
    pub big_r: T,
    bessel: BesselJ<T>,
    quad: QuadratureSpec,
}

impl<T: Real> ModelOperator<T> {
    pub fn new(kind: ModelKind, n: usize, nu: T, big_r: T, quad: QuadratureSpec) -> Result<Self> {
        if !(big_r > T::zero()) {
            return Err(Error::DomainError(format!("R must be positive (got {big_r})")));
        }
        if nu < T::zero() {
            return Err(Error::DomainError(format!("nu must be nonnegative (got {nu})")));
        }
        Ok(Self { kind, n, big_r, bessel: BesselJ::with_spec(nu, quad), quad })
    }

    pub fn nu(&self) -> T {
        self.bessel.order()
    }

    /// Smallest `R` for which the remainder is defined on the whole annulus,
    /// given the radial support lower edge `rho_lo`.
    pub fn min_radius(nu: T, rho_lo: T) -> T {
        T::lit(2.0) * (nu + nu.cbrt()) / rho_lo
    }

    /// `h_ν(z)` or `I_ν(z)`.
    pub fn kernel(&self, z: T) -> Result<Complex<T>> {
        match self.kind {
            ModelKind::Remainder => bessel_remainder(&self.bessel, z).map(|h| Complex::new(h, T::zero())),
            ModelKind::Oscillatory => i_nu(self.nu(), z),
        }
    }

    pub fn eval(&self, a: &RadialProfile<T>, t: T, r: T) -> Result<Complex<T>> {
        let cut = chi(r / self.big_r);
        if cut == T::zero() {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        let (lo, hi) = a.support();
        let nu = self.nu();
        if self.kind == ModelKind::Remainder && !(r * lo > nu + nu.cbrt()) {
            return Err(Error::DomainError(format!(
                "remainder needs r*rho > nu + nu^(1/3) on the support (nu={nu}, r={r}, rho>={lo})"
            )));
        }
        if self.kind == ModelKind::Oscillatory && !(r * lo > nu) {
            return Err(Error::DomainError(format!("I_nu needs r*rho > nu (nu={nu}, r={r}, rho>={lo})")));
        }
        let rate = (r + T::lit(2.0) * t.abs() * hi).as_f64();
        let p0 = self.quad.panels_for(rate, (hi - lo).as_f64(), ORDER).max(4);
        let rule = gauss_legendre(ORDER);
        let half_n = T::from_usize_lossy(self.n) * T::lit(0.5);
        let mut failure = None;
        let est = refine::<T, Complex<T>, _, _>(
            &self.quad,
            "model operator integral",
            |level| {
                let p = p0 << level;
                let v = integrate_breaks(
                    &mut |rho: T| {
                        let amp = a.eval(rho);
                        if amp.re == T::zero() && amp.im == T::zero() {
                            return Complex::new(T::zero(), T::zero());
                        }
                        let core = self.kernel(r * rho).unwrap_or_else(|e| {
                            failure = Some(e);
                            Complex::new(T::zero(), T::zero())
                        });
                        let w = rho.powf(half_n) * phi_cutoff(rho);
                        Complex::from_polar(T::one(), -t * rho * rho) * core * amp * w
                    },
                    &uniform_breaks(lo, hi, p),
                    &rule,
                );
                (v, p)
            },
            |v| self.quad.tolerance * (1.0 + v.norm().as_f64()),
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(est.value * cut)
    }
}

/// `T_ν a(t, r)` on the annulus of radius `R`.
#[allow(clippy::too_many_arguments)]
pub fn op_t<T: Real>(n: usize, nu: T, a: &RadialProfile<T>, big_r: T, t: T, r: T, quad: &QuadratureSpec) -> Result<Complex<T>> {
    ModelOperator::new(ModelKind::Remainder, n, nu, big_r, *quad)?.eval(a, t, r)
}

/// `H_ν a(t, r)` on the annulus of radius `R`.
#[allow(clippy::too_many_arguments)]
pub fn op_h<T: Real>(n: usize, nu: T, a: &RadialProfile<T>, big_r: T, t: T, r: T, quad: &QuadratureSpec) -> Result<Complex<T>> {
    ModelOperator::new(ModelKind::Oscillatory, n, nu, big_r, *quad)?.eval(a, t, r)
}

/// `K(ρ₁..ρ₄) = ∫_{R/2}^{R} χ⁴(r/R) e^{i(θ(ρ₁r)−θ(ρ₂r)+θ(ρ₃r)−θ(ρ₄r))} Π ((rρ_j)²−ν²)^{−1/4} dr`.
pub fn kernel_k<T: Real>(big_r: T, nu: T, rho: [T; 4], quad: &QuadratureSpec) -> Result<Complex<T>> {
    let half = T::lit(0.5);
    let lo = big_r * half;
    let rho_min = rho.iter().fold(T::infinity(), |m, &x| m.min(x));
    if !(rho_min > T::zero()) || !(lo * rho_min > nu) {
        return Err(Error::DomainError(format!("kernel needs R*rho/2 > nu (R={big_r}, nu={nu}, min rho={rho_min})")));
    }
    let signs = [T::one(), -T::one(), T::one(), -T::one()];
    // r-derivative of the total phase is Σ±ρ_j θ'(ρ_j r) = Σ±ρ_j − O(ν²/r)
    let net = (rho[0] - rho[1] + rho[2] - rho[3]).abs().as_f64();
    let rate = net + 4.0 * (nu * nu).as_f64() / lo.as_f64() + 1.0;
    let p0 = quad.panels_for(rate, lo.as_f64(), ORDER).max(8);
    let rule = gauss_legendre(ORDER);
    let mut failure = None;
    let est = refine::<T, Complex<T>, _, _>(
        quad,
        "kernel K integral",
        |level| {
            let p = p0 << level;
            let v = integrate_breaks(
                &mut |r: T| {
                    let c = chi(r / big_r);
                    if c == T::zero() {
                        return Complex::new(T::zero(), T::zero());
                    }
                    let mut phase = T::zero();
                    let mut amp = c * c * c * c;
                    for j in 0..4 {
                        let z = rho[j] * r;
                        match phase_theta(nu, z, 0) {
                            Ok(th) => phase = phase + signs[j] * th,
                            Err(e) => failure = Some(e),
                        }
                        amp = amp * ((z - nu) * (z + nu)).powf(T::lit(-0.25));
                    }
                    Complex::from_polar(amp, phase)
                },
                &uniform_breaks(lo, big_r, p),
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
