use crate::error::{Error, Result};
use crate::norms::NormGrid;
use crate::quadrature::QuadratureSpec;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bessel,
    Restriction,
    Operators,
    Kernel,
    Smoothing,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Bessel, Suite::Restriction, Suite::Operators, Suite::Kernel, Suite::Smoothing, Suite::Identities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bessel => "bessel",
            Suite::Restriction => "restriction",
            Suite::Operators => "operators",
            Suite::Kernel => "kernel",
            Suite::Smoothing => "smoothing",
            Suite::Identities => "identities",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}' (expected one of bessel, restriction, operators, kernel, smoothing, identities)")))
    }
}

/// Parameters of a suite run. Lists that a suite does not use are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n: usize,
    /// Harmonic degrees `k`; each is run as a single mode.
    pub modes: Vec<usize>,
    /// Annulus radii `R`.
    pub radii: Vec<f64>,
    /// Extra small radii reported for information only.
    pub deep_radii: Vec<f64>,
    pub q: Vec<f64>,
    /// Bessel orders (regime bounds, model operators, kernel).
    pub nu: Vec<f64>,
    /// Orders for the `J_ν(ν)` slope.
    pub transition_nu: Vec<f64>,
    /// Orders for the large-argument residual.
    pub oscillatory_nu: Vec<f64>,
    /// Frequency scales `N` of the smoothing data.
    pub frequencies: Vec<f64>,
    /// Dyadic factors for the rescaling identity.
    pub scales: Vec<f64>,
    /// Points per mode (identities) or per order (bessel).
    pub points: usize,
    pub quadruples: usize,
    pub draws: usize,
    pub seed: u64,
    pub margin: f64,
    pub quad: QuadratureSpec,
    pub grid: NormGrid,
}

fn dyadic(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|e| 2f64.powi(e)).collect()
}

impl SuiteConfig {
    pub fn defaults(suite: Suite) -> Self {
        let base = Self {
            n: 2,
            modes: vec![0],
            radii: Vec::new(),
            deep_radii: Vec::new(),
            q: Vec::new(),
            nu: Vec::new(),
            transition_nu: Vec::new(),
            oscillatory_nu: Vec::new(),
            frequencies: Vec::new(),
            scales: Vec::new(),
            points: 50,
            quadruples: 100,
            draws: 20,
            seed: 20240601,
            margin: 0.05,
            quad: QuadratureSpec::default(),
            grid: NormGrid::default(),
        };
        match suite {
            Suite::Bessel => Self {
                nu: vec![20.0, 50.0, 100.0, 200.0],
                transition_nu: dyadic(3, 9),
                oscillatory_nu: vec![4.0, 16.0, 64.0],
                points: 200,
                ..base
            },
            Suite::Restriction => Self {
                modes: vec![0, 2, 4],
                radii: dyadic(-3, 9),
                deep_radii: dyadic(-8, -5),
                q: vec![2.0, 4.0, 6.0],
                ..base
            },
            Suite::Operators => Self { nu: vec![1.0, 4.0], radii: dyadic(7, 10), q: vec![4.0, 6.0], ..base },
            Suite::Kernel => Self { nu: vec![1.0], radii: dyadic(7, 10), quadruples: 1000, ..base },
            Suite::Smoothing => Self { modes: vec![0, 4], frequencies: dyadic(2, 6), q: vec![10.0 / 3.0, 4.0], ..base },
            Suite::Identities => Self { modes: (0..=5).collect(), scales: vec![2.0, 4.0, 8.0], ..base },
        }
    }

    /// Sets one `key = value` pair; unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "n" => self.n = parse_int(v)?,
            "modes" => self.modes = parse_list(v, parse_int)?,
            "radii" => self.radii = parse_list(v, parse_real)?,
            "deep_radii" => self.deep_radii = parse_list(v, parse_real)?,
            "q" => self.q = parse_list(v, parse_real)?,
            "nu" => self.nu = parse_list(v, parse_real)?,
            "transition_nu" => self.transition_nu = parse_list(v, parse_real)?,
            "oscillatory_nu" => self.oscillatory_nu = parse_list(v, parse_real)?,
            "frequencies" => self.frequencies = parse_list(v, parse_real)?,
            "scales" => self.scales = parse_list(v, parse_real)?,
            "points" => self.points = parse_int(v)?,
            "quadruples" => self.quadruples = parse_int(v)?,
            "draws" => self.draws = parse_int(v)?,
            "seed" => self.seed = v.parse().map_err(|_| Error::Config(format!("seed must be a nonnegative integer (got '{v}')")))?,
            "margin" => self.margin = parse_real(v)?,
            "tolerance" => self.quad.tolerance = parse_real(v)?,
            "max_panels" => self.quad.max_panels = parse_int(v)?,
            "rel_tol" => self.grid.rel_tol = parse_real(v)?,
            "tail_tol" => self.grid.tail_tol = parse_real(v)?,
            "max_level" => self.grid.max_level = parse_int::<u32>(v)?,
            "oversample" => self.grid.oversample = parse_real(v)?,
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.quad.validate()?;
        self.grid.validate()?;
        if !(2..=3).contains(&self.n) {
            return Err(Error::Config(format!("suites support n = 2 or 3 (got {})", self.n)));
        }
        if !(self.margin >= 0.0) {
            return Err(Error::Config("margin must be nonnegative".into()));
        }
        for (name, list) in [
            ("radii", &self.radii),
            ("deep_radii", &self.deep_radii),
            ("frequencies", &self.frequencies),
            ("scales", &self.scales),
            ("q", &self.q),
        ] {
            if list.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive and finite")));
            }
        }
        if self.nu.iter().chain(&self.transition_nu).chain(&self.oscillatory_nu).any(|&x| !(x >= 0.0)) {
            return Err(Error::Config("orders must be nonnegative".into()));
        }
        if self.modes.iter().any(|&k| k > 8) {
            return Err(Error::Config("mode degrees are limited to k <= 8".into()));
        }
        Ok(())
    }
}

fn parse_real(s: &str) -> Result<f64> {
    let bad = || Error::Config(format!("expected a number (got '{s}')"));
    if let Some((a, b)) = s.split_once('/') {
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        return if b == 0.0 { Err(bad()) } else { Ok(a / b) };
    }
    if let Some((a, e)) = s.split_once('^') {
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let e: i32 = e.trim().parse().map_err(|_| bad())?;
        return Ok(a.powi(e));
    }
    s.parse().map_err(|_| bad())
}

fn parse_int<T: FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Config(format!("expected a nonnegative integer (got '{s}')")))
}

fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| item(x.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_and_parse() {
        let mut c = SuiteConfig::defaults(Suite::Restriction);
        c.set("radii", "1/8, 2^-2, 0.5").unwrap();
        assert_eq!(c.radii, vec![0.125, 0.25, 0.5]);
        c.set("modes", "1,3").unwrap();
        assert_eq!(c.modes, vec![1, 3]);
        assert!(matches!(c.set("bogus", "1"), Err(Error::Config(_))));
        assert!(matches!(c.set("q", "four"), Err(Error::Config(_))));
        assert_eq!("kernel".parse::<Suite>().unwrap(), Suite::Kernel);
        assert!("nope".parse::<Suite>().is_err());
    }
}
