//! Angular quadrature for `∫_{S^{n−1}} |Σ c_m Y_m(ω)|^q dω`.

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::special::ln_gamma_f64;
use crate::spherical::{eval_harmonic, ModeIndex, SphereGrid};
use num_complex::Complex64;

/// `|S^{d}|`, the area of the unit `d`-sphere.
pub fn sphere_area(d: usize) -> f64 {
    let h = 0.5 * (d as f64 + 1.0);
    2.0 * (h * std::f64::consts::PI.ln() - ln_gamma_f64(h)).exp()
}

/// Points, weights and harmonic values for a fixed list of modes.
#[derive(Debug, Clone)]
pub struct AngularRule {
    pub n: usize,
    pub weights: Vec<f64>,
    /// `values[j][m] = Y_m(ω_j)`.
    pub values: Vec<Vec<f64>>,
}

impl AngularRule {
    /// A rule fine enough for `|Σ c_m Y_m|^q` with the given modes.
    pub fn new(modes: &[ModeIndex], q: f64) -> Result<Self> {
        let n = modes.first().map(|m| m.n()).ok_or_else(|| Error::DegenerateData("no modes".into()))?;
        let kmax = modes.iter().map(|m| m.k()).max().unwrap_or(0);
        // |F|^q for even q is a polynomial of degree q·kmax; the extra nodes cover odd q
        let degree = ((q * 0.5 + 1.0) * kmax as f64).ceil() as usize + 8;
        let (points, weights): (Vec<Vec<f64>>, Vec<f64>) = match n {
            2 | 3 => {
                let g = SphereGrid::<f64>::for_degree(n, degree, 16);
                (g.points, g.weights)
            }
            _ => {
                if modes.iter().any(|m| m.l() != 1) {
                    return Err(Error::UnsupportedBasis(format!("only zonal modes for n={n}")));
                }
                zonal_rule(n, degree)
            }
        };
        let values = points
            .iter()
            .map(|p| modes.iter().map(|m| eval_harmonic(m, p)).collect::<Result<Vec<f64>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, weights, values })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ_m c_m Y_m(ω_j)`.
    pub fn combine(&self, j: usize, c: &[Complex64]) -> Complex64 {
        self.values[j].iter().zip(c).fold(Complex64::new(0.0, 0.0), |acc, (&y, &cm)| acc + cm * y)
    }

    /// `∫ |Σ c_m Y_m|^q dω` and `max_ω |Σ c_m Y_m|` for each `q`.
    pub fn integrate(&self, c: &[Complex64], qs: &[f64], out: &mut [f64]) -> f64 {
        out.iter_mut().for_each(|o| *o = 0.0);
        let mut sup = 0.0f64;
        for (j, &w) in self.weights.iter().enumerate() {
            let v = self.combine(j, c).norm();
            sup = sup.max(v);
            for (o, &q) in out.iter_mut().zip(qs) {
                *o += w * v.powf(q);
            }
        }
        sup
    }
}

/// Points on `S^{n−1}` along the polar angle from `e_n`; weights carry `|S^{n−2}| sin^{n−2}`.
fn zonal_rule(n: usize, degree: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let rule = gauss_legendre(degree / 2 + 16);
    let area = sphere_area(n - 2);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (th, w) in rule.mapped(0.0, std::f64::consts::PI) {
        let mut p = vec![0.0; n];
        p[0] = th.sin();
        p[n - 1] = th.cos();
        points.push(p);
        weights.push(w * area * th.sin().powi(n as i32 - 2));
    }
    (points, weights)
}

/// `∫_{S^{n−1}} |Y|^q dω` for one harmonic.
pub fn harmonic_lq(idx: &ModeIndex, q: f64) -> Result<f64> {
    let rule = AngularRule::new(std::slice::from_ref(idx), q)?;
    let mut out = [0.0];
    rule.integrate(&[Complex64::new(1.0, 0.0)], &[q], &mut out);
    Ok(out[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn areas() {
        assert!((sphere_area(1) - std::f64::consts::TAU).abs() < 1e-14);
        assert!((sphere_area(2) - 4.0 * std::f64::consts::PI).abs() < 1e-13);
        assert!((sphere_area(3) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn l2_of_harmonics_is_one() {
        for idx in [
            ModeIndex::new(2, 3, 2).unwrap(),
            ModeIndex::new(3, 4, 5).unwrap(),
            ModeIndex::zonal(5, 3).unwrap(),
            ModeIndex::zonal(4, 0).unwrap(),
        ] {
            assert!((harmonic_lq(&idx, 2.0).unwrap() - 1.0).abs() < 1e-12, "{idx}");
        }
    }

    #[test]
    fn l4_of_circle_modes() {
        // ∫ (cos kθ/√π)^4 = 3/(4π) for k ≥ 1; constant mode gives 1/(2π)
        let v = harmonic_lq(&ModeIndex::new(2, 5, 1).unwrap(), 4.0).unwrap();
        assert!((v - 3.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-13);
        let v = harmonic_lq(&ModeIndex::new(2, 0, 1).unwrap(), 4.0).unwrap();
        assert!((v - 1.0 / std::f64::consts::TAU).abs() < 1e-13);
    }
}
