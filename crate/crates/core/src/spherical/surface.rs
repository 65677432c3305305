use super::{eval_harmonic, ModeIndex, RadialProfile, SphereGrid};
use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;

#[derive(Debug, Clone, PartialEq)]
pub struct Mode<T> {
    pub index: ModeIndex,
    pub profile: RadialProfile<T>,
}

/// `g(ξ) = Σ a_{k,ℓ}(|ξ|/M) Y_{k,ℓ}(ξ/|ξ|)`, supported in `M ≤ |ξ| ≤ 2M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceFunction<T> {
    n: usize,
    modes: Vec<Mode<T>>,
    scale: T,
}

impl<T: Real> SurfaceFunction<T> {
    pub fn new(n: usize, modes: Vec<Mode<T>>) -> Result<Self> {
        Self::with_scale(n, modes, T::one())
    }

    pub fn with_scale(n: usize, modes: Vec<Mode<T>>, scale: T) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedBasis(format!("surface functions need n >= 2 (got {n})")));
        }
        if !(scale > T::zero()) {
            return Err(Error::DomainError(format!("scale must be positive (got {scale})")));
        }
        for (i, m) in modes.iter().enumerate() {
            if m.index.n() != n {
                return Err(Error::DomainError(format!("mode {} does not live in dimension {n}", m.index)));
            }
            if modes[..i].iter().any(|o| o.index == m.index) {
                return Err(Error::DomainError(format!("mode {} listed twice", m.index)));
            }
            if n >= 4 && m.index.l() != 1 {
                return Err(Error::UnsupportedBasis(format!("mode {}: only zonal modes for n >= 4", m.index)));
            }
        }
        Ok(Self { n, modes, scale })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// One mode with the given profile.
    pub fn single(index: ModeIndex, profile: RadialProfile<T>) -> Result<Self> {
        Self::new(index.n(), vec![Mode { index, profile }])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modes(&self) -> &[Mode<T>] {
        &self.modes
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    /// `g_M(ξ) = g(ξ/M)`.
    pub fn rescaled(&self, m: T) -> Self {
        Self { n: self.n, modes: self.modes.clone(), scale: self.scale * m }
    }

    /// Same modes at scale `scale`.
    pub fn at_scale(&self, scale: T) -> Self {
        Self { n: self.n, modes: self.modes.clone(), scale }
    }

    /// `λ g`.
    pub fn scaled_by(&self, lambda: Complex<T>) -> Self {
        let modes = self.modes.iter().map(|m| Mode { index: m.index, profile: m.profile.scaled(lambda) }).collect();
        Self { n: self.n, modes, scale: self.scale }
    }

    /// Radial support `[lo, hi]` of the union of the mode profiles (scaled).
    pub fn radial_support(&self) -> Option<(T, T)> {
        self.modes.iter().map(|m| m.profile.support()).fold(None, |acc, (lo, hi)| match acc {
            None => Some((lo * self.scale, hi * self.scale)),
            Some((a, b)) => Some((a.min(lo * self.scale), b.max(hi * self.scale))),
        })
    }

    pub fn max_degree(&self) -> usize {
        self.modes.iter().map(|m| m.index.k()).max().unwrap_or(0)
    }

    /// Profile of mode `i` at physical radius `ρ`.
    pub fn coefficient(&self, i: usize, rho: T) -> Complex<T> {
        self.modes[i].profile.eval(rho / self.scale)
    }

    /// `g(ξ)`.
    pub fn eval(&self, xi: &[T]) -> Result<Complex<T>> {
        if xi.len() != self.n {
            return Err(Error::DomainError(format!("point has {} components, expected {}", xi.len(), self.n)));
        }
        let rho = xi.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
        let mut acc = Complex::new(T::zero(), T::zero());
        if rho == T::zero() {
            return Ok(acc);
        }
        let dir: Vec<T> = xi.iter().map(|&x| x / rho).collect();
        for (i, m) in self.modes.iter().enumerate() {
            let a = self.coefficient(i, rho);
            if a.re != T::zero() || a.im != T::zero() {
                acc = acc + a * eval_harmonic(&m.index, &dir)?;
            }
        }
        Ok(acc)
    }

    /// `Σ_modes a(ρ) Y(ω)` for a unit direction `ω`.
    pub fn eval_polar(&self, rho: T, dir: &[T]) -> Result<Complex<T>> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, m) in self.modes.iter().enumerate() {
            let a = self.coefficient(i, rho);
            if a.re != T::zero() || a.im != T::zero() {
                acc = acc + a * eval_harmonic(&m.index, dir)?;
            }
        }
        Ok(acc)
    }

    /// Whether `g` is real-valued (real profiles; the bases are real).
    pub fn is_real(&self) -> bool {
        self.modes.iter().all(|m| m.profile.is_real())
    }
}

/// `(‖g(ρ·)‖_{L²(S^{n−1})}, ‖(a_{k,ℓ}(ρ))‖_{ℓ²})` at a fixed radius `ρ`.
pub fn parseval_check<T: Real>(g: &SurfaceFunction<T>, rho: T) -> Result<(T, T)> {
    if g.n() > 3 {
        return Err(Error::UnsupportedBasis(format!("Parseval check needs n in {{2, 3}} (got {})", g.n())));
    }
    let grid = SphereGrid::<T>::for_degree(g.n(), g.max_degree(), 8);
    let mut lhs = T::zero();
    for (p, &w) in grid.points.iter().zip(&grid.weights) {
        lhs = lhs + w * g.eval_polar(rho, p)?.norm_sqr();
    }
    let rhs = (0..g.modes().len()).fold(T::zero(), |acc, i| acc + g.coefficient(i, rho).norm_sqr());
    Ok((lhs.sqrt(), rhs.sqrt()))
}
