//! Space-time `L^q` norms of a [`SpaceTimeField`].
//!
//! For each radial node the whole time series `c(t_k, r)` comes from one FFT:
//! with `τ = ρ²`, `c(t, r) = ∫ e^{istτ} F(r, √τ)/(2√τ) dτ`, and the trapezoid
//! rule on a uniform `τ`-grid of step `Δτ = 2π/(|s|P)` yields `c` on the
//! uniform `t`-grid of period `P`. Since `|c|^q` is band-limited (exactly for
//! even `q`), a trapezoid sum in `t` with a step below the band limit is
//! spectrally accurate.

use super::angular::{harmonic_lq, AngularRule};
use super::field::{Layout, SpaceTimeField};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, pairwise_sum};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::sync::Arc;

const R_ORDER: usize = 16;

/// Region of integration in `(t, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Domain {
    /// `ℝ × {R/2 ≤ |x| ≤ R}`.
    Annulus { big_r: f64 },
    /// `[0, t_end] × ℝ^n`.
    Slab { t_end: f64 },
}

/// Exponents and region for one mixed norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedNormSpec {
    /// Space-time exponent.
    pub q: f64,
    /// Surface exponent of the matching data norm.
    pub p: f64,
    /// Angular regularity of the matching data norm.
    pub s: f64,
    pub domain: Domain,
}

/// Resolution and stopping rules for space-time norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormGrid {
    /// Relative change between levels accepted as converged.
    pub rel_tol: f64,
    /// Relative tail (truncated region) accepted before refining.
    pub tail_tol: f64,
    pub max_level: u32,
    /// Radial wavelengths `2π/(κρ_max)` per 16-point panel at level 0.
    pub wavelengths_per_panel: f64,
    /// Multiplies the time sampling rate.
    pub oversample: f64,
    /// Bound on window (or radius) enlargements by 1.5.
    pub max_growth: u32,
}

impl Default for NormGrid {
    fn default() -> Self {
        Self { rel_tol: 1e-3, tail_tol: 1e-3, max_level: 5, wavelengths_per_panel: 3.0, oversample: 1.0, max_growth: 14 }
    }
}

impl NormGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.tail_tol > 0.0 && self.wavelengths_per_panel > 0.0 && self.oversample >= 1.0) {
            return Err(Error::Config("norm grid tolerances and resolutions must be positive (oversample >= 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub q: f64,
    pub value: f64,
    /// Change from the previous refinement level.
    pub quad_error: f64,
    /// Estimated contribution of the truncated region, in norm units.
    pub tail_bound: f64,
    /// Largest `|field|` seen on the grid.
    pub sup: f64,
    /// Half-length of the time window (annulus) or radial cutoff (slab).
    pub extent: f64,
    pub level: u32,
}

/// Uniform `τ`- and `t`-grids linked by `|s| h Δτ = 2π/L`.
#[derive(Debug, Clone)]
struct TimeGrid {
    s: f64,
    h: f64,
    len: usize,
    dtau: f64,
    tau_lo: f64,
    ntau: usize,
}

impl TimeGrid {
    fn new(s: f64, tau_lo: f64, tau_hi: f64, h: f64, half_window: f64) -> Self {
        let len = ((2.0 * half_window / h).ceil() as usize).next_power_of_two().max(16);
        let period = len as f64 * h;
        let dtau = TAU / (s.abs() * period);
        let ntau = (((tau_hi - tau_lo) / dtau).floor() as usize + 1).min(len);
        Self { s, h, len, dtau, tau_lo, ntau }
    }

    fn t(&self, k: usize) -> f64 {
        if k < self.len / 2 {
            k as f64 * self.h
        } else {
            (k as f64 - self.len as f64) * self.h
        }
    }

    fn half_period(&self) -> f64 {
        0.5 * self.len as f64 * self.h
    }
}

/// `c_m(t_k, r)` for every component, rows indexed by component.
fn time_series(
    field: &dyn SpaceTimeField,
    grid: &TimeGrid,
    fft: &Arc<dyn Fft<f64>>,
    r: f64,
    comps: usize,
) -> Result<Vec<Vec<Complex64>>> {
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); grid.len]; comps];
    let mut amp = vec![Complex64::new(0.0, 0.0); comps];
    for j in 0..grid.ntau {
        let tau = grid.tau_lo + j as f64 * grid.dtau;
        let rho = tau.sqrt();
        field.amplitudes(r, rho, &mut amp)?;
        let w = grid.dtau / (2.0 * rho);
        for (row, a) in rows.iter_mut().zip(&amp) {
            row[j] = a * w;
        }
    }
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for row in rows.iter_mut() {
        if row.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
            continue;
        }
        fft.process_with_scratch(row, &mut scratch);
        for (k, z) in row.iter_mut().enumerate() {
            *z *= Complex64::from_polar(1.0, grid.s * grid.t(k) * grid.tau_lo);
        }
    }
    Ok(rows)
}

/// How `|field|^q` is integrated over directions.
enum Angular {
    Radial,
    /// One mode: `∫|Y|^q` per `q` and `max|Y|`.
    Single { lq: Vec<f64>, sup: f64 },
    Grid(AngularRule),
}

impl Angular {
    fn new(layout: &Layout, qs: &[f64]) -> Result<Self> {
        match layout {
            Layout::Radial => Ok(Angular::Radial),
            Layout::Modes(m) if m.len() == 1 => {
                let lq = qs.iter().map(|&q| harmonic_lq(&m[0], q)).collect::<Result<Vec<_>>>()?;
                let rule = AngularRule::new(m, 2.0)?;
                let sup = rule.values.iter().fold(0.0f64, |a, v| a.max(v[0].abs()));
                Ok(Angular::Single { lq, sup })
            }
            Layout::Modes(m) => {
                let qmax = qs.iter().cloned().fold(2.0, f64::max);
                Ok(Angular::Grid(AngularRule::new(m, qmax)?))
            }
        }
    }

    /// `∫|f|^q dω` per `q` into `out`; returns `max_ω |f|`.
    fn apply(&self, c: &[Complex64], qs: &[f64], out: &mut [f64]) -> f64 {
        match self {
            Angular::Radial => {
                let v = c[0].norm();
                for (o, &q) in out.iter_mut().zip(qs) {
                    *o = v.powf(q);
                }
                v
            }
            Angular::Single { lq, sup } => {
                let v = c[0].norm();
                for ((o, &q), &a) in out.iter_mut().zip(qs).zip(lq) {
                    *o = v.powf(q) * a;
                }
                v * sup
            }
            Angular::Grid(rule) => rule.integrate(c, qs, out),
        }
    }
}

/// Per-radius sums over the selected time samples.
struct Row {
    sums: Vec<f64>,
    sup: f64,
    /// Largest angular integral of `|f|^q` near the ends of the period.
    edge: Vec<f64>,
}

fn sweep(
    field: &dyn SpaceTimeField,
    grid: &TimeGrid,
    rs: &[f64],
    tweights: &[(usize, f64)],
    qs: &[f64],
    angular: &Angular,
) -> Result<Vec<Row>> {
    let comps = field.layout().components();
    let dir = if grid.s > 0.0 { FftDirection::Inverse } else { FftDirection::Forward };
    let fft = FftPlanner::<f64>::new().plan_fft(grid.len, dir);
    let edge_from = 0.95 * grid.half_period();
    rs.par_iter()
        .map(|&r| {
            let rows = time_series(field, grid, &fft, r, comps)?;
            let mut c = vec![Complex64::new(0.0, 0.0); comps];
            let mut vals = vec![0.0; qs.len()];
            let mut terms: Vec<Vec<f64>> = vec![Vec::with_capacity(tweights.len()); qs.len()];
            let mut sup = 0.0f64;
            for &(k, w) in tweights {
                for (m, row) in rows.iter().enumerate() {
                    c[m] = row[k];
                }
                sup = sup.max(angular.apply(&c, qs, &mut vals));
                for (t, &v) in terms.iter_mut().zip(&vals) {
                    t.push(w * v);
                }
            }
            let mut edge = vec![0.0f64; qs.len()];
            for k in 0..grid.len {
                if grid.t(k).abs() < edge_from {
                    continue;
                }
                for (m, row) in rows.iter().enumerate() {
                    c[m] = row[k];
                }
                angular.apply(&c, qs, &mut vals);
                for (e, &v) in edge.iter_mut().zip(&vals) {
                    *e = (*e).max(v);
                }
            }
            let sums = terms.iter().map(|t| pairwise_sum::<f64, f64>(t)).collect();
            Ok(Row { sums, sup, edge })
        })
        .collect()
}

/// Gauss–Legendre nodes and weights on `panels` equal panels of `[a, b]`.
fn radial_rule(a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = gauss_legendre(R_ORDER);
    let h = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * R_ORDER);
    let mut ws = Vec::with_capacity(panels * R_ORDER);
    for p in 0..panels {
        let lo = a + h * p as f64;
        for (x, w) in rule.mapped(lo, if p + 1 == panels { b } else { lo + h }) {
            xs.push(x);
            ws.push(w);
        }
    }
    (xs, ws)
}

fn measure(layout: &Layout, r: f64) -> f64 {
    match layout {
        Layout::Radial => 1.0,
        Layout::Modes(m) => r.powi(m[0].n() as i32 - 1),
    }
}

fn check_qs(qs: &[f64]) -> Result<()> {
    if qs.is_empty() || qs.iter().any(|&q| !(q >= 2.0) || !q.is_finite()) {
        return Err(Error::DomainError(format!("space-time exponents must be finite and >= 2 (got {qs:?})")));
    }
    Ok(())
}

struct Geometry {
    s: f64,
    tau_lo: f64,
    tau_hi: f64,
    kappa: f64,
    rho_lo: f64,
    rho_hi: f64,
    /// Inverse bandwidth of `c` in `t`.
    t_unit: f64,
    h0: f64,
}

impl Geometry {
    fn new(field: &dyn SpaceTimeField, qs: &[f64], grid: &NormGrid) -> Self {
        let s = field.time_frequency();
        let (rho_lo, rho_hi) = field.rho_support();
        let (tau_lo, tau_hi) = (rho_lo * rho_lo, rho_hi * rho_hi);
        let band = s.abs() * (tau_hi - tau_lo);
        let qmax = qs.iter().cloned().fold(2.0, f64::max);
        let t_unit = TAU / band;
        Self {
            s,
            tau_lo,
            tau_hi,
            kappa: field.radial_rate(),
            rho_lo,
            rho_hi,
            t_unit,
            h0: t_unit / (0.5 * qmax + 1.0) / grid.oversample,
        }
    }

    /// Time at which the wave with frequency `ρ_lo` reaches radius `r`.
    fn arrival(&self, r: f64) -> f64 {
        self.kappa * r / (2.0 * self.s.abs() * self.rho_lo)
    }

    fn panel_width(&self, grid: &NormGrid) -> f64 {
        grid.wavelengths_per_panel * TAU / (self.kappa * self.rho_hi)
    }
}

/// `‖field‖_{L^q}` over `domain` for each exponent in `qs`, from one grid.
pub fn lq_spacetime_norms(field: &dyn SpaceTimeField, qs: &[f64], domain: Domain, grid: &NormGrid) -> Result<Vec<NormResult>> {
    check_qs(qs)?;
    grid.validate()?;
    match domain {
        Domain::Annulus { big_r } => annulus(field, qs, big_r, grid),
        Domain::Slab { t_end } => slab(field, qs, t_end, grid),
    }
}

pub fn lq_spacetime_norm(field: &dyn SpaceTimeField, spec: &MixedNormSpec, grid: &NormGrid) -> Result<NormResult> {
    Ok(lq_spacetime_norms(field, &[spec.q], spec.domain, grid)?[0])
}

fn totals(rows: &[Row], rws: &[f64], nq: usize) -> Vec<f64> {
    (0..nq)
        .map(|i| {
            let terms: Vec<f64> = rows.iter().zip(rws).map(|(row, &w)| row.sums[i] * w).collect();
            pairwise_sum::<f64, f64>(&terms)
        })
        .collect()
}

fn tail_in_norm_units(total: f64, tail: f64, q: f64) -> f64 {
    if total <= 0.0 {
        return if tail > 0.0 { f64::INFINITY } else { 0.0 };
    }
    total.powf(1.0 / q) * ((1.0 + tail / total).powf(1.0 / q) - 1.0)
}

fn converged(prev: &[NormResult], cur: &[NormResult], tol: f64) -> bool {
    prev.iter().zip(cur).all(|(a, b)| (a.value - b.value).abs() <= tol * b.value.max(f64::MIN_POSITIVE))
}

fn annulus(field: &dyn SpaceTimeField, qs: &[f64], big_r: f64, grid: &NormGrid) -> Result<Vec<NormResult>> {
    if !(big_r > 0.0) {
        return Err(Error::DomainError(format!("annulus radius must be positive (got {big_r})")));
    }
    let layout = field.layout();
    let angular = Angular::new(layout, qs)?;
    let g = Geometry::new(field, qs, grid);
    let (r_lo, r_hi) = (0.5 * big_r, big_r);
    let panels0 = (((r_hi - r_lo) / g.panel_width(grid)).ceil() as usize).max(2);
    let d = field.decay_power();
    let meas: f64 = {
        let (xs, ws) = radial_rule(r_lo, r_hi, 2);
        xs.iter().zip(&ws).map(|(&r, &w)| w * measure(layout, r)).sum()
    };

    let eval = |level: u32, window: f64| -> Result<Vec<NormResult>> {
        let h = g.h0 / f64::from(1u32 << level);
        let tg = TimeGrid::new(g.s, g.tau_lo, g.tau_hi, h, window);
        let (rs, ws) = radial_rule(r_lo, r_hi, panels0 << level);
        let rws: Vec<f64> = rs.iter().zip(&ws).map(|(&r, &w)| w * measure(layout, r)).collect();
        let tweights: Vec<(usize, f64)> = (0..tg.len).map(|k| (k, h)).collect();
        let rows = sweep(field, &tg, &rs, &tweights, qs, &angular)?;
        let tot = totals(&rows, &rws, qs.len());
        let sup = rows.iter().fold(0.0f64, |a, r| a.max(r.sup));
        let t_e = 0.95 * tg.half_period();
        qs.iter()
            .enumerate()
            .map(|(i, &q)| {
                let dq = d * q;
                let edge = rows.iter().fold(0.0f64, |a, r| a.max(r.edge[i]));
                // both ends of the window, envelope C|t|^{−d} scaled from the edge
                let tail = if edge == 0.0 {
                    0.0
                } else if dq > 1.0 {
                    2.0 * edge * meas * t_e / (dq - 1.0)
                } else {
                    f64::INFINITY
                };
                Ok(NormResult {
                    q,
                    value: tot[i].max(0.0).powf(1.0 / q),
                    quad_error: 0.0,
                    tail_bound: tail_in_norm_units(tot[i], tail, q),
                    sup,
                    extent: tg.half_period(),
                    level,
                })
            })
            .collect()
    };

    let mut window = 1.2 * g.arrival(r_hi) + 8.0 * g.t_unit;
    let mut res = eval(0, window)?;
    let mut growth = 0;
    while res.iter().any(|r| r.tail_bound > grid.tail_tol * r.value) {
        growth += 1;
        if growth > grid.max_growth {
            let worst = res.iter().map(|r| r.tail_bound / r.value.max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
            return Err(Error::TailNotControlled(format!(
                "time window {window:.3e} for R={big_r}: relative tail {worst:.3e}"
            )));
        }
        window *= 1.5;
        res = eval(0, window)?;
    }
    refine_levels(res, grid, |level| eval(level, window), &format!("annulus R={big_r}"))
}

fn refine_levels(
    mut prev: Vec<NormResult>,
    grid: &NormGrid,
    mut eval: impl FnMut(u32) -> Result<Vec<NormResult>>,
    what: &str,
) -> Result<Vec<NormResult>> {
    if prev.iter().all(|r| r.value == 0.0) {
        return Ok(prev);
    }
    for level in 1..=grid.max_level {
        let mut cur = eval(level)?;
        if converged(&prev, &cur, grid.rel_tol) {
            for (c, p) in cur.iter_mut().zip(&prev) {
                c.quad_error = (c.value - p.value).abs();
            }
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergent(format!("{what}: norms still changing after level {}", grid.max_level)))
}

/// Trapezoid weights with Gregory end corrections (error `O(h⁴)`), `n + 1` points.
fn gregory_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![h; n + 1];
    if n < 6 {
        w[0] = 0.5 * h;
        w[n] = 0.5 * h;
        return w;
    }
    for (i, c) in [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0].iter().enumerate() {
        w[i] = c * h;
        w[n - i] = c * h;
    }
    w
}

fn slab(field: &dyn SpaceTimeField, qs: &[f64], t_end: f64, grid: &NormGrid) -> Result<Vec<NormResult>> {
    if !(t_end > 0.0) {
        return Err(Error::DomainError(format!("slab length must be positive (got {t_end})")));
    }
    let layout = field.layout();
    let angular = Angular::new(layout, qs)?;
    let g = Geometry::new(field, qs, grid);
    let width = g.panel_width(grid);
    // radius reached by the fastest frequency at t_end, plus the spread of the data
    let front = 2.0 * g.s.abs() * t_end * g.rho_hi / g.kappa;
    let spread = 8.0 * TAU / (g.kappa * (g.rho_hi - g.rho_lo));
    let steps0 = ((t_end / g.h0).ceil() as usize).max(8);

    let eval = |level: u32, r_max: f64| -> Result<Vec<NormResult>> {
        let steps = steps0 << level;
        let h = t_end / steps as f64;
        let half = t_end.max(g.arrival(r_max)) + 8.0 * g.t_unit;
        let tg = TimeGrid::new(g.s, g.tau_lo, g.tau_hi, h, half);
        let gw = gregory_weights(steps, h);
        let tweights: Vec<(usize, f64)> = gw.into_iter().enumerate().collect();
        let panels = (((r_max / width).ceil() as usize).max(4)) << level;
        let (rs, ws) = radial_rule(0.0, r_max, panels);
        let rws: Vec<f64> = rs.iter().zip(&ws).map(|(&r, &w)| w * measure(layout, r)).collect();
        let rows = sweep(field, &tg, &rs, &tweights, qs, &angular)?;
        let tot = totals(&rows, &rws, qs.len());
        let sup = rows.iter().fold(0.0f64, |a, r| a.max(r.sup));
        let meas: f64 = rws.iter().sum();
        qs.iter()
            .enumerate()
            .map(|(i, &q)| {
                let sums: Vec<f64> = rows.iter().map(|row| row.sums[i]).collect();
                let radial_tail = shell_tail(&sums, &rs, &rws, r_max);
                // wrap-around from beyond the period, bounded by the edge amplitude
                let edge = rows.iter().fold(0.0f64, |acc, r| acc.max(r.edge[i]));
                let alias = edge * meas * t_end;
                Ok(NormResult {
                    q,
                    value: tot[i].max(0.0).powf(1.0 / q),
                    quad_error: 0.0,
                    tail_bound: tail_in_norm_units(tot[i], radial_tail + alias, q),
                    sup,
                    extent: r_max,
                    level,
                })
            })
            .collect()
    };

    let mut r_max = 1.1 * front + spread;
    let mut res = eval(0, r_max)?;
    let mut growth = 0;
    while res.iter().any(|r| !(r.tail_bound <= grid.tail_tol * r.value)) && res.iter().any(|r| r.value > 0.0) {
        growth += 1;
        if growth > grid.max_growth {
            let worst = res.iter().map(|r| r.tail_bound / r.value.max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
            return Err(Error::TailNotControlled(format!("radial cutoff {r_max:.3e}: relative tail {worst:.3e}")));
        }
        r_max *= 1.5;
        res = eval(0, r_max)?;
    }
    refine_levels(res, grid, |level| eval(level, r_max), &format!("slab t_end={t_end}"))
}

/// Tail beyond `r_max` by geometric continuation of the last two tenths of `[0, r_max]`.
fn shell_tail(sums: &[f64], rs: &[f64], rws: &[f64], r_max: f64) -> f64 {
    let shell = |lo: f64, hi: f64| -> f64 {
        let terms: Vec<f64> = sums
            .iter()
            .zip(rs)
            .zip(rws)
            .filter(|((_, &r), _)| r >= lo * r_max && r < hi * r_max)
            .map(|((v, _), &w)| v * w)
            .collect();
        pairwise_sum::<f64, f64>(&terms)
    };
    let (a, b) = (shell(0.8, 0.9), shell(0.9, 1.01));
    if b <= 0.0 {
        0.0
    } else if a > 0.0 && b / a < 0.7 {
        b * (b / a) / (1.0 - b / a)
    } else {
        f64::INFINITY
    }
}

/// `‖field(t, ·)‖_{L^q_x}` at a single time, for each exponent in `qs`.
pub fn lq_space_norms(field: &dyn SpaceTimeField, qs: &[f64], t: f64, grid: &NormGrid) -> Result<Vec<NormResult>> {
    check_qs(qs)?;
    grid.validate()?;
    let layout = field.layout();
    let comps = layout.components();
    let angular = Angular::new(layout, qs)?;
    let g = Geometry::new(field, qs, grid);
    let width = g.panel_width(grid);
    let front = 2.0 * g.s.abs() * t.abs() * g.rho_hi / g.kappa;
    let spread = 8.0 * TAU / (g.kappa * (g.rho_hi - g.rho_lo));
    let rule = gauss_legendre(R_ORDER);

    let eval = |level: u32, r_max: f64| -> Result<Vec<NormResult>> {
        let panels = (((r_max / width).ceil() as usize).max(4)) << level;
        let (rs, ws) = radial_rule(0.0, r_max, panels);
        let rws: Vec<f64> = rs.iter().zip(&ws).map(|(&r, &w)| w * measure(layout, r)).collect();
        let rows: Vec<(Vec<f64>, f64)> = rs
            .par_iter()
            .map(|&r| {
                let rate = g.kappa * r + 2.0 * g.s.abs() * t.abs() * g.rho_hi;
                let np = (((rate * (g.rho_hi - g.rho_lo) / TAU / 2.0).ceil() as usize).max(4)) << level;
                let mut c = vec![Complex64::new(0.0, 0.0); comps];
                let mut amp = vec![Complex64::new(0.0, 0.0); comps];
                let h = (g.rho_hi - g.rho_lo) / np as f64;
                for p in 0..np {
                    let lo = g.rho_lo + h * p as f64;
                    for (rho, w) in rule.mapped(lo, lo + h) {
                        field.amplitudes(r, rho, &mut amp)?;
                        let e = Complex64::from_polar(w, g.s * t * rho * rho);
                        for (ci, a) in c.iter_mut().zip(&amp) {
                            *ci += a * e;
                        }
                    }
                }
                let mut vals = vec![0.0; qs.len()];
                let sup = angular.apply(&c, qs, &mut vals);
                Ok((vals, sup))
            })
            .collect::<Result<Vec<_>>>()?;
        let sup = rows.iter().fold(0.0f64, |a, r| a.max(r.1));
        qs.iter()
            .enumerate()
            .map(|(i, &q)| {
                let sums: Vec<f64> = rows.iter().map(|r| r.0[i]).collect();
                let terms: Vec<f64> = sums.iter().zip(&rws).map(|(v, w)| v * w).collect();
                let total = pairwise_sum::<f64, f64>(&terms);
                Ok(NormResult {
                    q,
                    value: total.max(0.0).powf(1.0 / q),
                    quad_error: 0.0,
                    tail_bound: tail_in_norm_units(total, shell_tail(&sums, &rs, &rws, r_max), q),
                    sup,
                    extent: r_max,
                    level,
                })
            })
            .collect()
    };

    let mut r_max = 1.1 * front + spread;
    let mut res = eval(0, r_max)?;
    let mut growth = 0;
    while res.iter().any(|r| !(r.tail_bound <= grid.tail_tol * r.value)) && res.iter().any(|r| r.value > 0.0) {
        growth += 1;
        if growth > grid.max_growth {
            return Err(Error::TailNotControlled(format!("radial cutoff {r_max:.3e} at t={t}")));
        }
        r_max *= 1.5;
        res = eval(0, r_max)?;
    }
    refine_levels(res, grid, |level| eval(level, r_max), &format!("spatial norm at t={t}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gregory_is_exact_for_cubics() {
        let n = 20;
        let h = 1.0 / n as f64;
        let w = gregory_weights(n, h);
        let s: f64 = w.iter().enumerate().map(|(i, w)| w * (i as f64 * h).powi(3)).sum();
        assert!((s - 0.25).abs() < 1e-14);
    }

    #[test]
    fn time_grid_links_steps() {
        let g = TimeGrid::new(TAU, 1.0, 4.0, 0.05, 20.0);
        assert!(g.len.is_power_of_two());
        assert!(g.half_period() >= 20.0);
        assert!((TAU * g.h * g.dtau * g.len as f64 - TAU).abs() < 1e-12);
        assert!(g.tau_lo + (g.ntau - 1) as f64 * g.dtau <= 4.0 + 1e-12);
    }
}
