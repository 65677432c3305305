//! Large-argument expansion `J_ν(z) = √(2/πz)(P cos χ − Q sin χ)`.

use super::{BesselMethod, BesselValue};

const MAX_TERMS: usize = 60;

/// Smallest argument at which the expansion is attempted.
pub(super) fn threshold(nu: f64) -> f64 {
    (25.0f64).max(nu * nu)
}

#[derive(Debug, Clone)]
pub(super) struct HankelCoefficients {
    /// `a_k(ν) = Π_{j≤k}(4ν² − (2j−1)²) / (k! 8^k)`.
    a: Vec<f64>,
}

impl HankelCoefficients {
    pub(super) fn new(nu: f64) -> Self {
        let mu = 4.0 * nu * nu;
        let mut a = Vec::with_capacity(MAX_TERMS);
        let mut c = 1.0;
        a.push(c);
        for k in 1..MAX_TERMS {
            let odd = (2 * k - 1) as f64;
            c *= (mu - odd * odd) / (k as f64 * 8.0);
            a.push(c);
        }
        Self { a }
    }

    pub(super) fn eval(&self, nu: f64, z: f64) -> Option<BesselValue<f64>> {
        let (mut p, mut q) = (0.0, 0.0);
        let mut zk = 1.0;
        let mut last = f64::INFINITY;
        let mut omitted = f64::INFINITY;
        for (k, &ak) in self.a.iter().enumerate() {
            let term = ak * zk;
            if term == 0.0 {
                omitted = 0.0;
                break;
            }
            if term.abs() > last {
                // asymptotic series started diverging
                omitted = last;
                break;
            }
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p += sign * term;
            } else {
                q += sign * term;
            }
            last = term.abs();
            if last < 1e-17 * p.abs().max(1e-300) {
                omitted = last;
                break;
            }
            zk /= z;
        }
        if !omitted.is_finite() {
            return None;
        }
        let chi = z - (0.5 * nu + 0.25) * std::f64::consts::PI;
        let amp = (2.0 / (std::f64::consts::PI * z)).sqrt();
        let value = amp * (p * chi.cos() - q * chi.sin());
        let est_error = amp * (omitted + 4.0 * f64::EPSILON * (1.0 + z * f64::EPSILON));
        Some(BesselValue { value, method: BesselMethod::Asymptotic, est_error })
    }
}
