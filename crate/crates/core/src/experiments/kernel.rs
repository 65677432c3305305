use super::{Criterion, Sample, ScalingReport, SuiteConfig};
use crate::error::{Error, Result};
use crate::extension::kernel_k;
use crate::quadrature::{gauss_legendre, GaussRule};
use crate::spherical::bump;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const ORDER: usize = 10;

/// Nonnegative sum of smooth bumps supported in `[1, 4]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpMixture {
    /// `(center, half-width, weight)`
    pub bumps: Vec<(f64, f64, f64)>,
}

impl BumpMixture {
    pub const MIN_WIDTH: f64 = 0.3;

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let count = rng.random_range(2..=4);
        let bumps = (0..count)
            .map(|_| {
                let w = rng.random_range(Self::MIN_WIDTH..0.8);
                let c = rng.random_range(1.0 + w..4.0 - w);
                (c, w, rng.random_range(0.5..2.0))
            })
            .collect();
        Self { bumps }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.bumps.iter().map(|&(c, w, a)| a * bump((x - c) / w)).sum()
    }

    /// `∫ b⁴`
    pub fn l4_pow4(&self) -> f64 {
        integrate(&|x| self.eval(x).powi(4), 1.0, 4.0, &gauss_legendre(ORDER))
    }

    fn panel(&self) -> f64 {
        0.5 * self.bumps.iter().map(|b| b.1).fold(f64::INFINITY, f64::min)
    }
}

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rule: &GaussRule) -> f64 {
    let panels = ((b - a) / 0.1).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    (0..panels).map(|p| rule.mapped(a + h * p as f64, a + h * (p + 1) as f64).map(|(x, w)| w * f(x)).sum::<f64>()).sum()
}

/// Gauss nodes on the two pieces `{d : lo < |d| ≤ hi}` with panels no wider than `panel`.
fn shell_nodes(lo: f64, hi: f64, panel: f64, rule: &GaussRule) -> Vec<(f64, f64)> {
    let panels = ((hi - lo) / panel).ceil().max(1.0) as usize;
    let h = (hi - lo) / panels as f64;
    let mut out = Vec::with_capacity(2 * panels * rule.order());
    for p in 0..panels {
        for (x, w) in rule.mapped(lo + h * p as f64, lo + h * (p + 1) as f64) {
            out.push((x, w));
            out.push((-x, w));
        }
    }
    out
}

/// `∫ b(ρ₂) ∫_{|ρ₁−ρ₂|∼2^{−i}} b(ρ₁) ∫_{|ρ₃−ρ₂|∼2^{−j}} b(ρ₃) b(ρ₁−ρ₂+ρ₃)` with the
/// sharp shells `2^{−i−1} < |ρ₁−ρ₂| ≤ 2^{−i}`.
pub fn lemma_integral(b: &BumpMixture, i: u32, j: u32) -> f64 {
    let rule = gauss_legendre(ORDER);
    let panel = b.panel();
    let si = 0.5f64.powi(i as i32);
    let sj = 0.5f64.powi(j as i32);
    let us = shell_nodes(0.5 * si, si, panel, &rule);
    let vs = shell_nodes(0.5 * sj, sj, panel, &rule);
    let p2 = ((3.0 / panel).ceil()) as usize;
    let h = 3.0 / p2 as f64;
    let mut total = 0.0;
    for p in 0..p2 {
        for (r2, w2) in rule.mapped(1.0 + h * p as f64, 1.0 + h * (p + 1) as f64) {
            let b2 = b.eval(r2);
            if b2 == 0.0 {
                continue;
            }
            let mut s1 = 0.0;
            for &(u, wu) in &us {
                let b1 = b.eval(r2 + u);
                if b1 == 0.0 {
                    continue;
                }
                let s3: f64 = vs.iter().map(|&(v, wv)| wv * b.eval(r2 + v) * b.eval(r2 + u + v)).sum();
                s1 += wu * b1 * s3;
            }
            total += w2 * b2 * s1;
        }
    }
    total
}

/// Left side of the goal inequality with damping exponent 2, in the variables
/// `u = ρ₁−ρ₂`, `v = ρ₃−ρ₂` with breaks graded toward `u = 0` and `v = 0`.
pub fn goal_integral(b: &BumpMixture, big_r: f64) -> f64 {
    let rule = gauss_legendre(ORDER);
    let panel = b.panel();
    let mut br = vec![0.0];
    let mut x = 1.0 / (64.0 * big_r);
    while x < panel {
        br.push(x);
        x *= 2.0;
    }
    let extra = ((3.0 - panel) / panel).ceil() as usize;
    for e in 0..=extra {
        br.push(panel + (3.0 - panel) * e as f64 / extra as f64);
    }
    let mut nodes = Vec::new();
    for w in br.windows(2) {
        for (x, wx) in rule.mapped(w[0], w[1]) {
            nodes.push((x, wx));
            nodes.push((-x, wx));
        }
    }
    let p2 = ((3.0 / panel).ceil()) as usize;
    let h = 3.0 / p2 as f64;
    let mut total = 0.0;
    for p in 0..p2 {
        for (r2, w2) in rule.mapped(1.0 + h * p as f64, 1.0 + h * (p + 1) as f64) {
            let b2 = b.eval(r2);
            if b2 == 0.0 {
                continue;
            }
            let mut s1 = 0.0;
            for &(u, wu) in &nodes {
                let b1 = b.eval(r2 + u);
                if b1 == 0.0 {
                    continue;
                }
                let s3: f64 = nodes
                    .iter()
                    .map(|&(v, wv)| {
                        let d = 1.0 + big_r * u.abs() * v.abs();
                        wv * b.eval(r2 + v) * b.eval(r2 + u + v) / (d * d)
                    })
                    .sum();
                s1 += wu * b1 * s3;
            }
            total += w2 * b2 * s1;
        }
    }
    total
}

/// Resonant quadruples `ρ₁²−ρ₂² = ρ₄²−ρ₃²` in `[1, 2]⁴`, with the two differences
/// spread over several decades.
pub fn resonant_quadruples(count: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u2: f64 = rng.random_range(1.2..3.6);
        let mut d = || {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            sign * 10f64.powf(rng.random_range(-4.0..0.1))
        };
        let (d1, d3) = (d(), d());
        let u = [u2 + d1, u2, u2 + d3, u2 + d1 + d3];
        if u.iter().all(|&x| (1.0..=4.0).contains(&x)) {
            out.push(u.map(f64::sqrt));
        }
    }
    out
}

fn decay_shape(big_r: f64, rho: &[f64; 4]) -> f64 {
    let a = (rho[0] * rho[0] - rho[1] * rho[1]).abs();
    let c = (rho[2] * rho[2] - rho[1] * rho[1]).abs();
    let d = 1.0 + big_r * a * c;
    1.0 / (big_r * d * d)
}

pub fn suite_kernel_decay(cfg: &SuiteConfig) -> Result<Vec<ScalingReport>> {
    if cfg.quadruples < 3 {
        return Err(Error::DegenerateData(format!("need at least 3 resonant quadruples (got {})", cfg.quadruples)));
    }
    let m = cfg.margin;
    let quads = resonant_quadruples(cfg.quadruples, cfg.seed);
    let mut out = Vec::new();

    for &nu in &cfg.nu {
        let per_r: Vec<Sample> = cfg
            .radii
            .iter()
            .map(|&r| {
                let ratios: Vec<f64> = quads
                    .par_iter()
                    .map(|rho| Ok(kernel_k(r, nu, *rho, &cfg.quad)?.norm() / decay_shape(r, rho)))
                    .collect::<Result<_>>()?;
                Ok(Sample::exact(r, ratios.into_iter().fold(0.0, f64::max), 1.0))
            })
            .collect::<Result<_>>()?;
        out.push(
            ScalingReport::new(
                format!("kernel.decay.nu{nu}"),
                format!("max over {} resonant quadruples of |K| / (R^-1 (1+R|r1^2-r2^2||r3^2-r2^2|)^-2) (nu={nu})", quads.len()),
                "R",
                Criterion::Bounded,
                per_r.clone(),
            )
            .with_note(format!("{} quadruples, seed {}", quads.len(), cfg.seed)),
        );
        // the ratio climbs until R|r1^2-r2^2||r3^2-r2^2| reaches a few hundred, then levels off
        out.push(
            ScalingReport::new(
                format!("kernel.decay_saturation.nu{nu}"),
                format!("per-R maximum of the kernel ratio stays within a factor 3 across R (nu={nu})"),
                "R",
                Criterion::Stable { factor: 3.0 },
                per_r,
            )
            .informational(),
        );

        let diag = [1.5; 4];
        let samples: Vec<Sample> = cfg
            .radii
            .iter()
            .map(|&r| Ok(Sample::exact(r, kernel_k(r, nu, diag, &cfg.quad)?.norm() * r, 1.0)))
            .collect::<Result<_>>()?;
        out.push(ScalingReport::new(
            format!("kernel.diagonal.nu{nu}"),
            format!("K R at rho = (1.5, 1.5, 1.5, 1.5) is constant in R (nu={nu})"),
            "R",
            Criterion::Stable { factor: 1.05 },
            samples,
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let draws: Vec<BumpMixture> = (0..cfg.draws.max(1)).map(|_| BumpMixture::random(&mut rng)).collect();
    let lemma: Vec<Vec<Sample>> = draws
        .par_iter()
        .map(|b| {
            let norm = b.l4_pow4();
            let mut v = Vec::with_capacity(49);
            for i in 0..=6u32 {
                for j in 0..=6u32 {
                    let scale = 2f64.powi((i + j) as i32);
                    v.push(Sample::exact(scale, lemma_integral(b, i, j) * scale, norm));
                }
            }
            v
        })
        .collect();
    // per draw: the smallest C with I(i,j) <= C 2^-(i+j) ||b||_4^4 on the whole grid
    let per_draw: Vec<Sample> = lemma
        .iter()
        .enumerate()
        .map(|(d, v)| {
            let c = v.iter().map(Sample::ratio).fold(0.0, f64::max);
            Sample::exact((d + 1) as f64, c, 1.0)
        })
        .collect();
    out.push(
        ScalingReport::new(
            "kernel.lemma_integral",
            "max over i, j in 0..6 of I(i,j) 2^(i+j) / ||b||_4^4 is the same constant for every random bump mixture b",
            "draw",
            Criterion::Stable { factor: 3.0 },
            per_draw,
        )
        .with_note(format!("{} draws", draws.len())),
    );
    out.push(
        ScalingReport::new(
            "kernel.lemma_grid",
            "I(i,j) 2^(i+j) / ||b||_4^4 on every grid point of every draw",
            "2^(i+j)",
            Criterion::Bounded,
            lemma.into_iter().flatten().collect(),
        )
        .informational(),
    );

    let b = &draws[0];
    let norm = b.l4_pow4();
    let goal: Vec<Sample> = cfg
        .radii
        .par_iter()
        .map(|&r| Sample::exact(r, goal_integral(b, r), r.ln() * norm))
        .collect();
    out.push(ScalingReport::new(
        "kernel.goal",
        "damped triple integral (exponent 2) against ln(R) ||b||_4^4 decays like 1/R",
        "R",
        Criterion::SlopeAtMost { predicted: -1.0, margin: m },
        goal,
    ));
    Ok(out)
}
