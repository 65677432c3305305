//! The extension operator `(f dσ)^∨(t, x) = ∫ g(ξ) e^{2πi(x·ξ + t|ξ|²)} dξ`,
//! evaluated by tensor quadrature or mode by mode, plus the model operators and
//! kernel used for the large-`R` estimates.
//!
//! Sign convention: the mode-wise evaluation uses `e^{+2πitρ²}`, the sign of the
//! defining integral; with it the two evaluators agree.

mod direct;
mod modal;
mod model;
mod schrodinger;

pub use direct::extension_direct;
pub use modal::{extension_modal, mode_field};
pub use model::{bessel_remainder, kernel_k, op_h, op_t, ModelKind, ModelOperator};
pub use schrodinger::{schrodinger_evolve, schrodinger_surface};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spherical::SurfaceFunction;

/// Sign of `t|ξ|²` in the modal phase; see the module docs.
pub const MODAL_TIME_SIGN: f64 = 1.0;

/// A point `(t, x)` with `x = r·ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimePoint<T> {
    pub t: T,
    pub r: T,
    /// Unit vector `ω` (arbitrary when `r = 0`).
    pub dir: Vec<T>,
}

impl<T: Real> SpacetimePoint<T> {
    pub fn from_cartesian(t: T, x: &[T]) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::DomainError("empty spatial point".into()));
        }
        let r = x.iter().fold(T::zero(), |a, &v| a + v * v).sqrt();
        let dir = if r > T::zero() {
            x.iter().map(|&v| v / r).collect()
        } else {
            let mut d = vec![T::zero(); x.len()];
            d[0] = T::one();
            d
        };
        Ok(Self { t, r, dir })
    }

    pub fn polar(t: T, r: T, dir: Vec<T>) -> Result<Self> {
        if r < T::zero() {
            return Err(Error::DomainError(format!("radius must be nonnegative (got {r})")));
        }
        let norm = dir.iter().fold(T::zero(), |a, &v| a + v * v).sqrt();
        if (norm - T::one()).abs() > T::lit(1e-6) {
            return Err(Error::DomainError("direction must be a unit vector".into()));
        }
        Ok(Self { t, r, dir })
    }

    pub fn x(&self) -> Vec<T> {
        self.dir.iter().map(|&d| d * self.r).collect()
    }

    pub fn n(&self) -> usize {
        self.dir.len()
    }
}

/// `g_M(ξ) = g(ξ/M)`, so that `(f_M dσ)^∨(t, x) = M^n (f dσ)^∨(M²t, Mx)`.
pub fn rescale_dyadic<T: Real>(g: &SurfaceFunction<T>, m: T) -> SurfaceFunction<T> {
    g.rescaled(m)
}

/// `χ(u) = exp(1 − 1/(1 − (4u−3)²))` on `(1/2, 1)`.
pub fn chi<T: Real>(u: T) -> T {
    crate::spherical::bump(T::lit(4.0) * u - T::lit(3.0))
}

/// Smooth cutoff equal to 1 on `[1, 2]` and supported in `(1/2, 4)`.
pub fn phi_cutoff<T: Real>(rho: T) -> T {
    let one = T::one();
    let half = T::lit(0.5);
    if rho <= half || rho >= T::lit(4.0) {
        return T::zero();
    }
    if rho >= one && rho <= T::lit(2.0) {
        return one;
    }
    // rising flank on (1/2, 1), falling flank on (2, 4)
    let u = if rho < one { (rho - half) / half } else { (T::lit(4.0) - rho) / T::lit(2.0) };
    let a = (-u.recip()).exp();
    let b = (-(one - u).recip()).exp();
    a / (a + b)
}
