//! Numerical toolkit for the paraboloid extension operator `(f dσ)^∨`.
//!
//! Fields are decomposed into spherical-harmonic modes whose radial parts are
//! Hankel transforms; Bessel functions are evaluated with a method chosen per
//! `(ν, r)`. On top of the evaluators sit mixed-norm estimators and a set of
//! experiment suites that fit power laws to measured norms.

pub mod besself;
pub mod spherical;
pub mod experiments;
pub mod extension;
pub mod norms;
pub mod error;
pub mod quadrature;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use quadrature::QuadratureSpec;
pub use scalar::Real;

pub type BesselValue64 = besself::BesselValue<f64>;
pub type BesselJ64 = besself::BesselJ<f64>;
pub type RadialProfile64 = spherical::RadialProfile<f64>;
pub type SurfaceFunction64 = spherical::SurfaceFunction<f64>;
