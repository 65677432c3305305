//! Spherical harmonics on `S^{n−1}`, radial profiles, surface functions and the
//! Hankel-transform formula for a single mode.

mod basis;
mod grid;
pub(crate) mod hankel;
mod io;
mod profile;
mod surface;

pub use basis::{direction_2d, direction_3d, eval_harmonic};
pub use grid::SphereGrid;
pub use hankel::{hankel_mode, hankel_mode_at_origin};
pub use io::{parse_surface_function, write_surface_function};
pub use profile::{bump, RadialProfile};
pub use surface::{parseval_check, Mode, SurfaceFunction};

use crate::error::{Error, Result};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Degree `k` and basis label `ℓ ∈ [1, d(k)]` of a harmonic on `S^{n−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    n: usize,
    k: usize,
    l: usize,
}

impl ModeIndex {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedBasis(format!("dimension {n}: mode indices need n >= 2")));
        }
        let d = harmonic_dimension(n, k);
        if l == 0 || l > d {
            return Err(Error::DomainError(format!("label {l} outside [1, {d}] for n={n}, k={k}")));
        }
        Ok(Self { n, k, l })
    }

    /// The zonal (`ℓ = 1`) harmonic of degree `k`.
    pub fn zonal(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Bessel order `ν(k) = k + (n−2)/2`.
    pub fn nu<T: Real>(&self) -> T {
        T::from_usize_lossy(self.k) + T::from_usize_lossy(self.n - 2) * T::lit(0.5)
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={}, l={})", self.n, self.k, self.l)
    }
}

/// Dimension of the degree-`k` harmonics on `S^{n−1}`:
/// `C(k+n−1, n−1) − C(k+n−3, n−1)`, with `d(0) = 1`.
pub fn harmonic_dimension(n: usize, k: usize) -> usize {
    if k == 0 {
        return 1;
    }
    if n < 2 {
        return 0;
    }
    let big = binomial(k + n - 1, n - 1);
    let small = if k >= 2 { binomial(k + n - 3, n - 1) } else { 0 };
    (big - small) as usize
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Multiplier `(1 + k(k+n−2))^{s/2}` of `(1−Δ_ω)^{s/2}` on degree-`k` harmonics.
pub fn angular_weight<T: Real>(n: usize, k: usize, s: T) -> T {
    let ev = (k * (k + n).saturating_sub(2)) as f64;
    T::lit(1.0 + ev).powf(s * T::lit(0.5))
}
