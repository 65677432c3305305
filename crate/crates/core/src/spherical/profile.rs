//! Smooth radial profiles `a(ρ)` supported in `[1, 2]`.

use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;

/// `exp(1 − 1/(1−u²))` on `(−1, 1)`, zero elsewhere; equals 1 at `u = 0`.
pub fn bump<T: Real>(u: T) -> T {
    let one = T::one();
    let d = one - u * u;
    if d <= T::zero() {
        T::zero()
    } else {
        (one - one / d).exp()
    }
}

/// `C^∞` step from 0 (`u ≤ 0`) to 1 (`u ≥ 1`).
fn smooth_step<T: Real>(u: T) -> T {
    if u <= T::zero() {
        return T::zero();
    }
    if u >= T::one() {
        return T::one();
    }
    let a = (-u.recip()).exp();
    let b = (-(T::one() - u).recip()).exp();
    a / (a + b)
}

#[derive(Debug, Clone, PartialEq)]
pub enum RadialProfile<T> {
    /// `amplitude · bump((ρ−center)/width) · Σ_j poly[j] (ρ−center)^j`
    /// (an empty `poly` means the constant 1).
    Bump { center: T, width: T, amplitude: Complex<T>, poly: Vec<T> },
    /// Cubic-spline interpolant of samples on a uniform grid of `[1, 2]`,
    /// tapered smoothly to zero over the first and last grid cells.
    Sampled { values: Vec<Complex<T>>, spline: SplineCoefficients<T> },
}

impl<T: Real> RadialProfile<T> {
    pub fn bump(center: T, width: T, amplitude: Complex<T>) -> Result<Self> {
        Self::modulated_bump(center, width, amplitude, Vec::new())
    }

    pub fn modulated_bump(center: T, width: T, amplitude: Complex<T>, poly: Vec<T>) -> Result<Self> {
        if !(width > T::zero()) || center - width < T::one() || center + width > T::lit(2.0) {
            return Err(Error::DomainError(format!(
                "bump [{center} - {width}, {center} + {width}] must lie inside [1, 2]"
            )));
        }
        Ok(Self::Bump { center, width, amplitude, poly })
    }

    /// Real unit-amplitude bump.
    pub fn unit_bump(center: T, width: T) -> Result<Self> {
        Self::bump(center, width, Complex::new(T::one(), T::zero()))
    }

    pub fn sampled(values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::DomainError("a sampled profile needs at least 4 samples".into()));
        }
        let spline = SplineCoefficients::natural(&values);
        Ok(Self::Sampled { values, spline })
    }

    /// Closed support interval.
    pub fn support(&self) -> (T, T) {
        match self {
            Self::Bump { center, width, .. } => (*center - *width, *center + *width),
            Self::Sampled { .. } => (T::one(), T::lit(2.0)),
        }
    }

    pub fn eval(&self, rho: T) -> Complex<T> {
        let (lo, hi) = self.support();
        if rho <= lo || rho >= hi {
            return Complex::new(T::zero(), T::zero());
        }
        match self {
            Self::Bump { center, width, amplitude, poly } => {
                let x = rho - *center;
                let mut p = if poly.is_empty() { T::one() } else { T::zero() };
                for &c in poly.iter().rev() {
                    p = p * x + c;
                }
                *amplitude * (bump(x / *width) * p)
            }
            Self::Sampled { values, spline } => {
                let m = values.len() - 1;
                let h = T::one() / T::from_usize_lossy(m);
                let u = (rho - T::one()) / h;
                let taper = smooth_step(u) * smooth_step(T::from_usize_lossy(m) - u);
                spline.eval(values, u) * taper
            }
        }
    }

    /// `λ a`.
    pub fn scaled(&self, lambda: Complex<T>) -> Self {
        match self {
            Self::Bump { center, width, amplitude, poly } => {
                Self::Bump { center: *center, width: *width, amplitude: *amplitude * lambda, poly: poly.clone() }
            }
            Self::Sampled { values, .. } => {
                let v: Vec<_> = values.iter().map(|&x| x * lambda).collect();
                let spline = SplineCoefficients::natural(&v);
                Self::Sampled { values: v, spline }
            }
        }
    }

    /// Whether the profile is real-valued.
    pub fn is_real(&self) -> bool {
        match self {
            Self::Bump { amplitude, .. } => amplitude.im == T::zero(),
            Self::Sampled { values, .. } => values.iter().all(|v| v.im == T::zero()),
        }
    }
}

/// Second derivatives of a natural cubic spline through uniform samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineCoefficients<T> {
    second: Vec<Complex<T>>,
}

impl<T: Real> SplineCoefficients<T> {
    fn natural(values: &[Complex<T>]) -> Self {
        // unit spacing in index coordinates: M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i+1} − 2y_i + y_{i−1})
        let n = values.len();
        let zero = Complex::new(T::zero(), T::zero());
        let mut second = vec![zero; n];
        if n < 3 {
            return Self { second };
        }
        let inner = n - 2;
        let mut diag = vec![T::lit(4.0); inner];
        let mut rhs: Vec<Complex<T>> = (1..n - 1)
            .map(|i| (values[i + 1] - values[i] * T::lit(2.0) + values[i - 1]) * T::lit(6.0))
            .collect();
        for i in 1..inner {
            let w = T::one() / diag[i - 1];
            diag[i] = diag[i] - w;
            let prev = rhs[i - 1];
            rhs[i] = rhs[i] - prev * w;
        }
        let mut sol = vec![zero; inner];
        sol[inner - 1] = rhs[inner - 1] / diag[inner - 1];
        for i in (0..inner - 1).rev() {
            sol[i] = (rhs[i] - sol[i + 1]) / diag[i];
        }
        second[1..n - 1].copy_from_slice(&sol);
        Self { second }
    }

    fn eval(&self, values: &[Complex<T>], u: T) -> Complex<T> {
        let m = values.len() - 1;
        let i = u.floor().to_usize().unwrap_or(0).min(m - 1);
        let t = u - T::from_usize_lossy(i);
        let s = T::one() - t;
        let six = T::lit(6.0);
        values[i] * s
            + values[i + 1] * t
            + (self.second[i] * (s * s * s - s) + self.second[i + 1] * (t * t * t - t)) / six
    }
}
