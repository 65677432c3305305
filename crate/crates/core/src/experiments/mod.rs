//! Named numerical checks. Each suite measures a family of norms or values,
//! fits power laws where a rate is claimed, and returns one [`ScalingReport`]
//! per claim with a verdict.

mod bessel;
mod config;
mod identities;
mod kernel;
mod operators;
mod output;
mod restriction;
mod smoothing;

pub use config::{Suite, SuiteConfig};
pub use output::{render_csv, render_summary, CSV_COLUMNS};

pub use bessel::suite_bessel_regimes;
pub use identities::suite_identities;
pub use kernel::{goal_integral, lemma_integral, resonant_quadruples, suite_kernel_decay, BumpMixture};
pub use operators::suite_model_operators;
pub use restriction::suite_localized_restriction;
pub use smoothing::suite_local_smoothing;

use crate::error::{Error, Result};
use crate::norms::{fit_scaling, NormResult};
use serde::{Deserialize, Serialize};

/// Fraction of a value above which quadrature or tail uncertainty makes a verdict inconclusive.
pub const INCONCLUSIVE_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// What a claim asserts about the ratios `value/rhs` of its samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Criterion {
    /// Log-log slope of `value/rhs` against scale at most `predicted + margin`.
    SlopeAtMost { predicted: f64, margin: f64 },
    /// Slope at least `predicted − margin`.
    SlopeAtLeast { predicted: f64, margin: f64 },
    /// Slope within `margin` of `predicted`.
    SlopeNear { predicted: f64, margin: f64 },
    /// `value ≤ C·rhs` with a finite fitted `C`.
    Bounded,
    /// `max(value/rhs) / min(value/rhs) ≤ factor`.
    Stable { factor: f64 },
    /// Every `value/rhs ≤ tol`.
    AtMost { tol: f64 },
    /// Every `value/rhs ≥ min`.
    AtLeast { min: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub scale: f64,
    pub n: usize,
    pub q: f64,
    pub p: f64,
    pub s: f64,
    /// Measured left side.
    pub value: f64,
    /// Right side without the constant (`1` when the claim has none).
    pub rhs: f64,
    pub quad_error: f64,
    pub tail_bound: f64,
}

impl Sample {
    pub fn exact(scale: f64, value: f64, rhs: f64) -> Self {
        Self { scale, n: 0, q: 0.0, p: 0.0, s: 0.0, value, rhs, quad_error: 0.0, tail_bound: 0.0 }
    }

    pub fn from_norm(scale: f64, norm: &NormResult, rhs: f64) -> Self {
        Self {
            scale,
            n: 0,
            q: norm.q,
            p: 0.0,
            s: 0.0,
            value: norm.value,
            rhs,
            quad_error: norm.quad_error,
            tail_bound: norm.tail_bound,
        }
    }

    pub fn exponents(mut self, n: usize, q: f64, p: f64, s: f64) -> Self {
        self.n = n;
        self.q = q;
        self.p = p;
        self.s = s;
        self
    }

    pub fn ratio(&self) -> f64 {
        self.value / self.rhs
    }
}

/// Outcome of one claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub claim: String,
    pub description: String,
    /// What the scale column measures (`R`, `N`, `nu`, ...).
    pub scale_name: String,
    pub criterion: Criterion,
    pub samples: Vec<Sample>,
    pub slope: Option<f64>,
    /// Fitted constant: `max value/(rhs·scale^slope_bound)` for slope claims, `max value/rhs` otherwise.
    pub constant: f64,
    pub verdict: Verdict,
    /// Informational claims never fail a suite.
    pub informational: bool,
    pub note: String,
}

impl ScalingReport {
    pub fn new(claim: impl Into<String>, description: impl Into<String>, scale_name: impl Into<String>, criterion: Criterion, samples: Vec<Sample>) -> Self {
        let mut r = Self {
            claim: claim.into(),
            description: description.into(),
            scale_name: scale_name.into(),
            criterion,
            samples,
            slope: None,
            constant: f64::NAN,
            verdict: Verdict::Inconclusive,
            informational: false,
            note: String::new(),
        };
        r.evaluate();
        r
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if self.note.is_empty() {
            self.note = note;
        } else {
            self.note = format!("{}; {note}", self.note);
        }
        self
    }

    pub fn predicted(&self) -> Option<f64> {
        match self.criterion {
            Criterion::SlopeAtMost { predicted, .. } | Criterion::SlopeAtLeast { predicted, .. } | Criterion::SlopeNear { predicted, .. } => Some(predicted),
            _ => None,
        }
    }

    pub fn margin(&self) -> Option<f64> {
        match self.criterion {
            Criterion::SlopeAtMost { margin, .. } | Criterion::SlopeAtLeast { margin, .. } | Criterion::SlopeNear { margin, .. } => Some(margin),
            _ => None,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    fn evaluate(&mut self) {
        if self.samples.is_empty() {
            self.note = "no samples".into();
            return;
        }
        let uncertain = self.samples.iter().find(|s| {
            let bad = s.quad_error.max(s.tail_bound);
            !(bad <= INCONCLUSIVE_FRACTION * s.value.abs()) && !(bad == 0.0 && s.value == 0.0)
        }).map(|s| s.scale);
        let ratios: Vec<f64> = self.samples.iter().map(Sample::ratio).collect();
        if ratios.iter().any(|r| !r.is_finite()) {
            self.note = "non-finite ratio".into();
            return;
        }
        let ok = match self.criterion {
            Criterion::SlopeAtMost { predicted, margin } => self.fit(predicted + margin).map(|s| s <= predicted + margin),
            Criterion::SlopeAtLeast { predicted, margin } => self.fit(predicted - margin).map(|s| s >= predicted - margin),
            Criterion::SlopeNear { predicted, margin } => self.fit(predicted).map(|s| (s - predicted).abs() <= margin),
            Criterion::Bounded => {
                self.constant = ratios.iter().cloned().fold(0.0, f64::max);
                Ok(self.constant.is_finite())
            }
            Criterion::Stable { factor } => {
                let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
                self.constant = max;
                self.note = format!("spread {:.4}", max / min);
                Ok(min > 0.0 && max <= factor * min)
            }
            Criterion::AtMost { tol } => {
                self.constant = ratios.iter().cloned().fold(0.0, f64::max);
                Ok(self.constant <= tol)
            }
            Criterion::AtLeast { min } => {
                self.constant = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
                Ok(self.constant >= min)
            }
        };
        self.verdict = match ok {
            Err(e) => {
                self.note = e.to_string();
                Verdict::Inconclusive
            }
            Ok(_) if uncertain.is_some() => {
                let scale = uncertain.expect("checked");
                self.note = format!("uncertainty above {INCONCLUSIVE_FRACTION} of the value at scale {scale}");
                Verdict::Inconclusive
            }
            Ok(true) => Verdict::Holds,
            Ok(false) => Verdict::Violated,
        };
    }

    /// Fits the slope; `constant` is the smallest `C` with `value ≤ C·rhs·scale^bound`.
    fn fit(&mut self, bound: f64) -> Result<f64> {
        let pts: Vec<(f64, f64)> = self.samples.iter().map(|s| (s.scale, s.ratio())).collect();
        let f = fit_scaling(&pts)?;
        self.slope = Some(f.slope);
        self.constant = pts.iter().map(|&(x, y)| y / x.powf(bound)).fold(0.0, f64::max);
        self.note = format!("max log residual {:.3e}", f.max_residual);
        Ok(f.slope)
    }
}

/// Reports of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub reports: Vec<ScalingReport>,
}

impl SuiteOutcome {
    pub fn violated(&self) -> impl Iterator<Item = &ScalingReport> {
        self.reports.iter().filter(|r| !r.informational && r.verdict == Verdict::Violated)
    }

    pub fn find(&self, claim: &str) -> Option<&ScalingReport> {
        self.reports.iter().find(|r| r.claim == claim)
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    cfg.validate()?;
    let reports = match suite {
        Suite::Bessel => suite_bessel_regimes(cfg)?,
        Suite::Restriction => suite_localized_restriction(cfg)?,
        Suite::Operators => suite_model_operators(cfg)?,
        Suite::Kernel => suite_kernel_decay(cfg)?,
        Suite::Smoothing => suite_local_smoothing(cfg)?,
        Suite::Identities => suite_identities(cfg)?,
    };
    if reports.is_empty() {
        return Err(Error::DegenerateData(format!("suite {suite} produced no claims")));
    }
    Ok(SuiteOutcome { suite, reports })
}
