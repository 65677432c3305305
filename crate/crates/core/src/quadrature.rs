//! Gauss–Legendre panel quadrature, refinement by panel doubling, and
//! deterministic pairwise summation.

use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Resolution and stopping rule for oscillatory quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub nodes_per_wavelength: usize,
    pub max_panels: usize,
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes_per_wavelength: 10, max_panels: 1 << 16, tolerance: 1e-10 }
    }
}

impl QuadratureSpec {
    pub fn with_tolerance(self, tolerance: f64) -> Self {
        Self { tolerance, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_wavelength < 4 {
            return Err(Error::Config("nodes_per_wavelength must be at least 4".into()));
        }
        if self.max_panels == 0 {
            return Err(Error::Config("max_panels must be positive".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Number of `order`-point panels needed on an interval of `length` when the
    /// phase changes at rate at most `rate`.
    pub fn panels_for(&self, rate: f64, length: f64, order: usize) -> usize {
        let wavelengths = rate.abs() * length.abs() / std::f64::consts::TAU;
        let nodes = wavelengths * self.nodes_per_wavelength as f64;
        ((nodes / order as f64).ceil() as usize).max(1)
    }
}

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    fn compute(order: usize) -> Self {
        assert!(order >= 1);
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(order, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        if order % 2 == 1 {
            nodes[order / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped<T: Real>(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * T::lit(x), half * T::lit(w)))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cached Gauss–Legendre rule of the given order.
pub fn gauss_legendre(order: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard.entry(order).or_insert_with(|| Arc::new(GaussRule::compute(order))).clone()
}

/// Values that can be integrated: real scalars and complex numbers.
pub trait QuadValue<T: Real>:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> + Send + Sync
{
    fn zero() -> Self;
    fn magnitude(&self) -> T;
}

impl<T: Real> QuadValue<T> for T {
    fn zero() -> Self {
        T::zero()
    }
    fn magnitude(&self) -> T {
        self.abs()
    }
}

impl<T: Real> QuadValue<T> for Complex<T> {
    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn magnitude(&self) -> T {
        self.norm()
    }
}

/// Sum in a fixed binary-tree order; the result depends only on the slice contents.
pub fn pairwise_sum<T: Real, V: QuadValue<T>>(xs: &[V]) -> V {
    if xs.len() <= 8 {
        let mut s = V::zero();
        for &x in xs {
            s = s + x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum::<T, V>(&xs[..mid]) + pairwise_sum::<T, V>(&xs[mid..])
}

/// Integrates `f` over the panels delimited by `breaks` with `rule` on each.
pub fn integrate_breaks<T, V, F>(f: &mut F, breaks: &[T], rule: &GaussRule) -> V
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(T) -> V,
{
    let mut total = V::zero();
    for w in breaks.windows(2) {
        let mut panel = V::zero();
        for (x, wt) in rule.mapped(w[0], w[1]) {
            panel = panel + f(x) * wt;
        }
        total = total + panel;
    }
    total
}

/// `panels` equal panels on `[a, b]`.
pub fn uniform_breaks<T: Real>(a: T, b: T, panels: usize) -> Vec<T> {
    let h = (b - a) / T::from_usize_lossy(panels);
    (0..=panels)
        .map(|i| if i == panels { b } else { a + h * T::from_usize_lossy(i) })
        .collect()
}

/// Uniform panels on `[a, b]` with the panel touching `b` replaced by a geometric
/// sequence shrinking toward `b` (for integrands with an algebraic endpoint factor).
pub fn graded_breaks<T: Real>(a: T, b: T, panels: usize, levels: usize) -> Vec<T> {
    let mut br = uniform_breaks(a, b, panels);
    br.pop();
    let mut width = b - *br.last().expect("nonempty");
    let ratio = T::lit(0.15);
    for _ in 0..levels {
        width = width * ratio;
        let x = b - width;
        let floor = T::epsilon() * T::lit(64.0) * b.abs().max(T::one());
        if width <= floor || x <= *br.last().expect("nonempty") {
            break;
        }
        br.push(x);
    }
    br.push(b);
    br
}

/// Mirror of [`graded_breaks`] with the grading at the left end.
pub fn graded_breaks_left<T: Real>(a: T, b: T, panels: usize, levels: usize) -> Vec<T> {
    let uniform = uniform_breaks(a, b, panels);
    let first = uniform[1] - a;
    let ratio = T::lit(0.15);
    let mut inner = Vec::with_capacity(levels);
    let mut width = first;
    for _ in 0..levels {
        width = width * ratio;
        let x = a + width;
        if x <= a {
            break;
        }
        inner.push(x);
    }
    let mut br = vec![a];
    br.extend(inner.into_iter().rev());
    br.extend_from_slice(&uniform[1..]);
    br
}

/// Result of a refined quadrature.
#[derive(Debug, Clone, Copy)]
pub struct Estimate<V> {
    pub value: V,
    pub error: f64,
    pub level: u32,
}

/// Evaluates `at_level(0), at_level(1), …` (each level doubling the resolution)
/// until two successive values differ by at most `tol(value)`.
///
/// `at_level` returns the estimate and the number of panels it used; exceeding
/// `spec.max_panels` aborts with `NonConvergent`.
pub fn refine<T, V, F, G>(spec: &QuadratureSpec, what: &str, mut at_level: F, tol: G) -> Result<Estimate<V>>
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(u32) -> (V, usize),
    G: Fn(&V) -> f64,
{
    let (mut prev, _) = at_level(0);
    let mut level = 1u32;
    loop {
        let (cur, panels) = at_level(level);
        let diff = (cur - prev).magnitude().as_f64();
        let over = panels > spec.max_panels;
        if diff <= tol(&cur) && !over {
            return Ok(Estimate { value: cur, error: diff, level });
        }
        if over || level > 40 || !diff.is_finite() {
            return Err(Error::NonConvergent(format!(
                "{what}: difference {diff:.3e} after {panels} panels"
            )));
        }
        prev = cur;
        level += 1;
    }
}
