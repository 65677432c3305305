//! Oscillatory decomposition `J_ν(r) = √(2/π) cos θ(r) / (r²−ν²)^{1/4} + h_ν(r)`
//! for `r > ν + ν^{1/3}`, with the phase
//! `θ(r) = (r²−ν²)^{1/2} − ν arccos(ν/r) − π/4`.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryDecomposition<T> {
    /// `(r²−ν²)^{−1/4}`.
    pub main_amplitude: T,
    /// `θ(r)`.
    pub phase: T,
    /// `√(2/π) cos θ(r) · main_amplitude`.
    pub main: T,
    /// Remainder shape times the constant `C` passed to [`bc_decompose`].
    pub remainder_bound: T,
}

/// Derivatives of the phase: order 0 is `θ` itself.
pub fn phase_theta<T: Real>(nu: T, r: T, order: u8) -> Result<T> {
    if !(r > nu) || nu < T::zero() {
        return Err(Error::DomainError(format!("phase needs r > nu >= 0 (nu={nu}, r={r})")));
    }
    let s2 = (r - nu) * (r + nu);
    let s = s2.sqrt();
    let nu2 = nu * nu;
    let v = match order {
        0 => s - nu * (nu / r).acos() - T::FRAC_PI_4(),
        1 => s / r,
        2 => nu2 / (r * r * s),
        3 => nu2 / r / (s2 * s) * (T::lit(2.0) * nu2 / (r * r) - T::lit(3.0)),
        _ => return Err(Error::DomainError(format!("phase derivative order {order} not available"))),
    };
    Ok(v)
}

/// Remainder shape: `ν²(r²−ν²)^{−7/4} + 1/r` on `[ν+ν^{1/3}, 2ν)`, `1/r` beyond.
pub fn remainder_shape<T: Real>(nu: T, r: T) -> T {
    let two = T::lit(2.0);
    if r >= two * nu {
        r.recip()
    } else {
        nu * nu * ((r - nu) * (r + nu)).powf(T::lit(-1.75)) + r.recip()
    }
}

/// Main term and remainder bound with constant `c`.
pub fn bc_decompose<T: Real>(nu: T, r: T, c: T) -> Result<OscillatoryDecomposition<T>> {
    let lower = nu + nu.cbrt();
    if !(r > lower) || nu < T::zero() {
        return Err(Error::DomainError(format!("decomposition needs r > nu + nu^(1/3) (nu={nu}, r={r})")));
    }
    let amp = ((r - nu) * (r + nu)).powf(T::lit(-0.25));
    let phase = phase_theta(nu, r, 0)?;
    let main = (T::lit(2.0) / T::PI()).sqrt() * phase.cos() * amp;
    Ok(OscillatoryDecomposition { main_amplitude: amp, phase, main, remainder_bound: c * remainder_shape(nu, r) })
}

/// `√(2/π) e^{iθ(r)} (r²−ν²)^{−1/4}`.
pub fn i_nu<T: Real>(nu: T, r: T) -> Result<num_complex::Complex<T>> {
    let amp = ((r - nu) * (r + nu)).powf(T::lit(-0.25));
    let phase = phase_theta(nu, r, 0)?;
    Ok(num_complex::Complex::from_polar((T::lit(2.0) / T::PI()).sqrt() * amp, phase))
}
