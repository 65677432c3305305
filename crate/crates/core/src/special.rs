//! Gamma-function helpers.

use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<T: Real>(x: T) -> T {
    T::lit(ln_gamma_f64(x.as_f64()))
}

pub(crate) fn ln_gamma_f64(x: f64) -> f64 {
    if x < 0.5 {
        // reflection; only reached for 0 < x < 1/2 by the callers in this crate
        let s = (std::f64::consts::PI * x).sin().abs();
        return std::f64::consts::PI.ln() - s.ln() - ln_gamma_f64(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `Γ(x)` for moderate positive `x`.
pub fn gamma<T: Real>(x: T) -> T {
    ln_gamma(x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        let mut f = 1.0f64;
        for n in 1..30 {
            f *= n as f64;
            let rel = (gamma(n as f64 + 1.0) - f).abs() / f;
            assert!(rel < 1e-13, "n={n} rel={rel}");
        }
    }

    #[test]
    fn half_integers() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5f64) - sqrt_pi).abs() < 1e-14);
        assert!((gamma(1.5f64) - 0.5 * sqrt_pi).abs() < 1e-14);
        assert!((gamma(0.25f64) - 3.625_609_908_221_908_3).abs() < 1e-13);
    }

    #[test]
    fn stirling_for_large_arguments() {
        for &x in &[50.5f64, 200.0, 1000.25] {
            let st = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
                - 1.0 / (360.0 * x.powi(3));
            assert!((ln_gamma(x) - st).abs() < 1e-10 * st.abs());
        }
    }
}
