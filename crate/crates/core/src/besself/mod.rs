//! Bessel functions of the first kind `J_ν(r)` for real `ν ≥ 0`, their regime
//! classification, bounds, and the oscillatory decomposition for `r > ν`.

mod asymptotic;
mod decomposition;
mod poisson;
mod saddle;
mod schlafli;

pub use decomposition::{bc_decompose, i_nu, phase_theta, remainder_shape, OscillatoryDecomposition};
pub use poisson::bessel_series;
pub use schlafli::{bessel_schlafli, e_term};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;
use crate::special::ln_gamma_f64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// How a [`BesselValue`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BesselMethod {
    /// Poisson integral (real segment or its deformation onto the Hankel contour).
    Series,
    Schlafli,
    /// Steepest-descent form of the Schläfli integral, used for `r < ν`.
    SteepestDescent,
    /// Large-argument Hankel expansion.
    Asymptotic,
    ClosedForm,
}

impl fmt::Display for BesselMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Series => "series",
            Self::Schlafli => "schlafli",
            Self::SteepestDescent => "steepest_descent",
            Self::Asymptotic => "asymptotic",
            Self::ClosedForm => "closed_form",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValue<T> {
    pub value: T,
    pub method: BesselMethod,
    pub est_error: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselRegime {
    Exponential,
    Transition,
    Oscillatory,
}

impl fmt::Display for BesselRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `r ≤ ν/2` is exponential, `r ≥ 2ν` oscillatory, anything between is transition.
pub fn classify_regime<T: Real>(nu: T, r: T) -> BesselRegime {
    let two = T::lit(2.0);
    if r <= nu / two {
        BesselRegime::Exponential
    } else if r >= two * nu {
        BesselRegime::Oscillatory
    } else {
        BesselRegime::Transition
    }
}

/// Constants for the three regime bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittedConstants<T> {
    /// Rate `c` in `C e^{-c(ν+r)}`.
    pub c: T,
    pub c_exponential: T,
    pub c_transition: T,
    pub c_oscillatory: T,
}

impl<T: Real> Default for FittedConstants<T> {
    fn default() -> Self {
        Self { c: T::lit(0.1), c_exponential: T::one(), c_transition: T::one(), c_oscillatory: T::one() }
    }
}

/// Shape of the regime bound with unit constant(s).
pub fn regime_shape<T: Real>(nu: T, r: T, c: T) -> T {
    match classify_regime(nu, r) {
        BesselRegime::Exponential => (-c * (nu + r)).exp(),
        BesselRegime::Transition => {
            let third = nu.powf(T::lit(-1.0 / 3.0));
            third * (third * (r - nu).abs() + T::one()).powf(T::lit(-0.25))
        }
        BesselRegime::Oscillatory => r.powf(T::lit(-0.5)) + r.recip(),
    }
}

/// Regime-appropriate upper bound for `|J_ν(r)|`.
pub fn asymptotic_bound<T: Real>(nu: T, r: T, k: &FittedConstants<T>) -> T {
    let shape = regime_shape(nu, r, k.c);
    match classify_regime(nu, r) {
        BesselRegime::Exponential => k.c_exponential * shape,
        BesselRegime::Transition => k.c_transition * shape,
        BesselRegime::Oscillatory => k.c_oscillatory * shape,
    }
}

/// `C rᵛ / (2ᵛ Γ(ν+½) Γ(½)) · (1 + 1/(ν+½))` with `C = 2`, which is a valid
/// constant for every `ν > −½`. Returns `+∞` when the bound overflows.
pub fn crude_bound<T: Real>(nu: T, r: T) -> T {
    let (nu, r) = (nu.as_f64(), r.as_f64());
    if r == 0.0 {
        let v = if nu == 0.0 { 2.0 / std::f64::consts::PI * 3.0 } else { 0.0 };
        return T::lit(v);
    }
    let ln = std::f64::consts::LN_2 + nu * (r / 2.0).ln()
        - ln_gamma_f64(nu + 0.5)
        - 0.5 * std::f64::consts::PI.ln()
        + (1.0 + 1.0 / (nu + 0.5)).ln();
    if ln >= T::max_value().as_f64().ln() {
        T::infinity()
    } else {
        T::lit(ln.exp())
    }
}

/// Evaluator for a fixed order; the per-order constants are computed once.
#[derive(Debug, Clone)]
pub struct BesselJ<T> {
    nu: T,
    ln_gamma_half: f64,
    hankel: asymptotic::HankelCoefficients,
    quad: QuadratureSpec,
}

impl<T: Real> BesselJ<T> {
    pub fn new(nu: T) -> Self {
        Self::with_spec(nu, QuadratureSpec::default())
    }

    pub fn with_spec(nu: T, quad: QuadratureSpec) -> Self {
        let nf = nu.as_f64();
        Self {
            nu,
            ln_gamma_half: ln_gamma_f64(nf + 0.5),
            hankel: asymptotic::HankelCoefficients::new(nf),
            quad,
        }
    }

    pub fn order(&self) -> T {
        self.nu
    }

    /// `J_ν(r)` with the method chosen from `(ν, r)`.
    pub fn eval(&self, r: T) -> Result<BesselValue<T>> {
        let (nu, x) = (self.nu.as_f64(), r.as_f64());
        if !(nu > -0.5) || !(x >= 0.0) || !nu.is_finite() || !x.is_finite() {
            return Err(Error::DomainError(format!("J_nu(r) needs nu > -1/2 and finite r >= 0, got nu={nu}, r={x}")));
        }
        let v = self.eval_f64(nu, x)?;
        Ok(BesselValue { value: T::lit(v.value), method: v.method, est_error: T::lit(v.est_error) })
    }

    /// Value only.
    pub fn value(&self, r: T) -> Result<T> {
        self.eval(r).map(|v| v.value)
    }

    fn eval_f64(&self, nu: f64, x: f64) -> Result<BesselValue<f64>> {
        if x == 0.0 {
            let value = if nu == 0.0 { 1.0 } else { 0.0 };
            return Ok(BesselValue { value, method: BesselMethod::ClosedForm, est_error: 0.0 });
        }
        if nu == 0.5 {
            let value = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
            return Ok(BesselValue { value, method: BesselMethod::ClosedForm, est_error: 1e-16 * value.abs() });
        }
        let tol = self.quad.tolerance;
        if x >= asymptotic::threshold(nu) {
            if let Some(v) = self.hankel.eval(nu, x) {
                if v.est_error <= tol {
                    return Ok(v);
                }
            }
        }
        if x < nu {
            return saddle::eval(nu, x, &self.quad);
        }
        if let Ok(v) = poisson::eval_f64(nu, x, self.ln_gamma_half, &self.quad) {
            if v.est_error <= tol {
                return Ok(v);
            }
        }
        schlafli::eval_f64(nu, x, &self.quad)
    }

    /// `ln|J_ν(r)|`, accurate even where `J_ν(r)` underflows (`r < ν`).
    pub fn ln_abs(&self, r: T) -> Result<T> {
        let (nu, x) = (self.nu.as_f64(), r.as_f64());
        if x > 0.0 && x < nu {
            return saddle::ln_value(nu, x, &self.quad).map(T::lit);
        }
        Ok(self.value(r)?.abs().ln())
    }
}

/// `J_ν(r)` with automatic method selection.
pub fn bessel_j<T: Real>(nu: T, r: T, quad: &QuadratureSpec) -> Result<BesselValue<T>> {
    BesselJ::with_spec(nu, *quad).eval(r)
}

#[cfg(test)]
mod tests;
