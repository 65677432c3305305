use crate::quadrature::gauss_legendre;
use crate::scalar::Real;

/// Quadrature on the unit sphere: trapezoid on `S¹`, Gauss–Legendre in
/// `cos(polar)` times trapezoid in azimuth on `S²`.
#[derive(Debug, Clone)]
pub struct SphereGrid<T> {
    pub points: Vec<Vec<T>>,
    pub weights: Vec<T>,
}

impl<T: Real> SphereGrid<T> {
    pub fn circle(nodes: usize) -> Self {
        let h = T::TAU() / T::from_usize_lossy(nodes);
        let points = (0..nodes)
            .map(|i| {
                let t = h * T::from_usize_lossy(i);
                vec![t.cos(), t.sin()]
            })
            .collect();
        Self { points, weights: vec![h; nodes] }
    }

    pub fn sphere(polar: usize, azimuth: usize) -> Self {
        let rule = gauss_legendre(polar);
        let h = T::TAU() / T::from_usize_lossy(azimuth);
        let mut points = Vec::with_capacity(polar * azimuth);
        let mut weights = Vec::with_capacity(polar * azimuth);
        for (z, w) in rule.mapped(-T::one(), T::one()) {
            let s = ((T::one() - z) * (T::one() + z)).sqrt();
            for j in 0..azimuth {
                let phi = h * T::from_usize_lossy(j);
                points.push(vec![s * phi.cos(), s * phi.sin(), z]);
                weights.push(w * h);
            }
        }
        Self { points, weights }
    }

    /// A grid accurate for products of harmonics up to degree `degree` in dimension `n ∈ {2, 3}`.
    pub fn for_degree(n: usize, degree: usize, extra: usize) -> Self {
        match n {
            2 => Self::circle(2 * degree + 2 + extra),
            _ => Self::sphere(degree + 2 + extra / 2, 2 * degree + 2 + extra),
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}
