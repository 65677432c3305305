//! Real orthonormal bases: Fourier modes on `S¹`, real spherical harmonics on
//! `S²`, and zonal Gegenbauer harmonics for `n ≥ 4`.

use super::ModeIndex;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::ln_gamma_f64;

pub fn direction_2d<T: Real>(theta: T) -> [T; 2] {
    [theta.cos(), theta.sin()]
}

pub fn direction_3d<T: Real>(polar: T, azimuth: T) -> [T; 3] {
    let s = polar.sin();
    [s * azimuth.cos(), s * azimuth.sin(), polar.cos()]
}

/// Value of `Y_{k,ℓ}` at the unit vector `dir`.
///
/// `n = 2`: `ℓ = 1` is `cos kθ/√π`, `ℓ = 2` is `sin kθ/√π`.
/// `n = 3`: `ℓ = 1` is `m = 0`, `ℓ = 2j` is `m = j` (cosine), `ℓ = 2j+1` is
/// `m = −j` (sine). `n ≥ 4`: zonal only, axis `e_n`.
pub fn eval_harmonic<T: Real>(idx: &ModeIndex, dir: &[T]) -> Result<T> {
    if dir.len() != idx.n() {
        return Err(Error::DomainError(format!("direction has {} components, expected {}", dir.len(), idx.n())));
    }
    match idx.n() {
        2 => Ok(circle(idx.k(), idx.l(), dir[1].atan2(dir[0]))),
        3 => {
            let z = dir[2].max(-T::one()).min(T::one());
            let phi = dir[1].atan2(dir[0]);
            Ok(sphere(idx.k(), idx.l(), z, phi))
        }
        n => {
            if idx.l() != 1 {
                return Err(Error::UnsupportedBasis(format!(
                    "only zonal harmonics are available for n={n} (requested l={})",
                    idx.l()
                )));
            }
            Ok(zonal(n, idx.k(), dir[n - 1]))
        }
    }
}

fn circle<T: Real>(k: usize, l: usize, theta: T) -> T {
    if k == 0 {
        return T::one() / T::TAU().sqrt();
    }
    let kt = T::from_usize_lossy(k) * theta;
    let v = if l == 1 { kt.cos() } else { kt.sin() };
    v / T::PI().sqrt()
}

/// Normalized associated Legendre `P̄_k^m(z)` with `∫_{S²} |P̄ e^{imφ}|² = 1`.
fn legendre_normalized<T: Real>(k: usize, m: usize, z: T) -> T {
    let s = ((T::one() - z) * (T::one() + z)).max(T::zero()).sqrt();
    let mut pmm = T::one() / (T::lit(4.0) * T::PI()).sqrt();
    for i in 1..=m {
        let i = T::from_usize_lossy(i);
        pmm = pmm * ((T::lit(2.0) * i + T::one()) / (T::lit(2.0) * i)).sqrt() * s;
    }
    if k == m {
        return pmm;
    }
    let mut p_prev = pmm;
    let mut p = T::from_usize_lossy(2 * m + 3).sqrt() * z * pmm;
    let mf = T::from_usize_lossy(m);
    for l in (m + 2)..=k {
        let lf = T::from_usize_lossy(l);
        let a = ((T::lit(4.0) * lf * lf - T::one()) / (lf * lf - mf * mf)).sqrt();
        let lm1 = lf - T::one();
        let b = ((lm1 * lm1 - mf * mf) / (T::lit(4.0) * lm1 * lm1 - T::one())).sqrt();
        let next = a * (z * p - b * p_prev);
        p_prev = p;
        p = next;
    }
    p
}

fn sphere<T: Real>(k: usize, l: usize, z: T, phi: T) -> T {
    if l == 1 {
        return legendre_normalized(k, 0, z);
    }
    let m = l / 2;
    let mphi = T::from_usize_lossy(m) * phi;
    let ang = if l % 2 == 0 { mphi.cos() } else { mphi.sin() };
    T::SQRT_2() * legendre_normalized(k, m, z) * ang
}

/// `c_k C_k^{λ}(t)`, `λ = (n−2)/2`, normalized on `S^{n−1}`.
fn zonal<T: Real>(n: usize, k: usize, t: T) -> T {
    let lambda = (n as f64 - 2.0) / 2.0;
    let lam = T::lit(lambda);
    let mut c_prev = T::one();
    let mut c = T::lit(2.0) * lam * t;
    if k == 0 {
        c = T::one();
    }
    for j in 2..=k {
        let jf = T::from_usize_lossy(j);
        let next = (T::lit(2.0) * t * (jf + lam - T::one()) * c - (jf + T::lit(2.0) * lam - T::lit(2.0)) * c_prev) / jf;
        c_prev = c;
        c = next;
    }
    // ‖C_k^λ(x_n)‖² on S^{n−1} = |S^{n−2}| · π 2^{1−2λ} Γ(k+2λ) / (k! (k+λ) Γ(λ)²)
    let kf = k as f64;
    let ln_sphere = std::f64::consts::LN_2 + 0.5 * (n as f64 - 1.0) * std::f64::consts::PI.ln()
        - ln_gamma_f64(0.5 * (n as f64 - 1.0));
    let ln_norm2 = ln_sphere + std::f64::consts::PI.ln() + (1.0 - 2.0 * lambda) * std::f64::consts::LN_2
        + ln_gamma_f64(kf + 2.0 * lambda)
        - ln_gamma_f64(kf + 1.0)
        - (kf + lambda).ln()
        - 2.0 * ln_gamma_f64(lambda);
    c * T::lit((-0.5 * ln_norm2).exp())
}

#[cfg(test)]
mod tests {
    use super::super::{harmonic_dimension, SphereGrid};
    use super::*;

    #[test]
    fn constant_mode_on_circle() {
        let idx = ModeIndex::new(2, 0, 1).unwrap();
        for t in [0.0, 1.0, 4.0] {
            let v = eval_harmonic(&idx, &direction_2d(t)).unwrap();
            assert!((v - 1.0 / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
        }
    }

    fn gram(n: usize, kmax: usize, grid: &SphereGrid<f64>) -> f64 {
        let mut idx = Vec::new();
        for k in 0..=kmax {
            for l in 1..=harmonic_dimension(n, k) {
                idx.push(ModeIndex::new(n, k, l).unwrap());
            }
        }
        let vals: Vec<Vec<f64>> = idx
            .iter()
            .map(|i| grid.points.iter().map(|p| eval_harmonic(i, p).unwrap()).collect())
            .collect();
        let mut worst = 0.0f64;
        for a in 0..idx.len() {
            for b in a..idx.len() {
                let g: f64 = (0..grid.len()).map(|q| grid.weights[q] * vals[a][q] * vals[b][q]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - want).abs());
            }
        }
        worst
    }

    #[test]
    fn orthonormal_on_circle_and_sphere() {
        assert!(gram(2, 16, &SphereGrid::circle(64)) < 1e-12);
        assert!(gram(3, 16, &SphereGrid::sphere(24, 48)) < 1e-12);
    }

    #[test]
    fn first_zonal_on_sphere_is_cosine() {
        let idx = ModeIndex::zonal(3, 1).unwrap();
        let c = (3.0 / (4.0 * std::f64::consts::PI)).sqrt();
        for p in [0.3f64, 1.2, 2.9] {
            let v = eval_harmonic(&idx, &direction_3d(p, 0.7)).unwrap();
            assert!((v - c * p.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn zonal_normalization_in_higher_dimensions() {
        // ∫_{S^{n−1}} f(x_n) = |S^{n−2}| ∫_{−1}^{1} f(t)(1−t²)^{(n−3)/2} dt
        let rule = crate::quadrature::gauss_legendre(64);
        for n in [4usize, 5, 6] {
            let area = 2.0 * std::f64::consts::PI.powf((n as f64 - 1.0) / 2.0) / ln_gamma_f64((n as f64 - 1.0) / 2.0).exp();
            for k in 0..8 {
                let idx = ModeIndex::zonal(n, k).unwrap();
                let mut acc = 0.0;
                for (phi, w) in rule.mapped(0.0f64, std::f64::consts::PI) {
                    let t = phi.cos();
                    let mut dir = vec![0.0; n];
                    dir[0] = phi.sin();
                    dir[n - 1] = t;
                    let y = eval_harmonic(&idx, &dir).unwrap();
                    acc += w * y * y * phi.sin().powi(n as i32 - 2);
                }
                let tol = 1e-12;
                assert!((area * acc - 1.0).abs() < tol, "n={n} k={k}: {}", area * acc);
            }
        }
        let idx = ModeIndex::new(4, 2, 3).unwrap();
        assert!(matches!(eval_harmonic(&idx, &[0.0, 0.0, 0.0, 1.0f64]), Err(Error::UnsupportedBasis(_))));
    }
}
