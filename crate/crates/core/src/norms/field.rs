//! Space-time fields of the form `Σ_m Y_m(ω) c_m(t, r)` with
//! `c_m(t, r) = ∫ e^{i s t ρ²} F_m(r, ρ) dρ`.

use crate::besself::BesselJ;
use crate::error::{Error, Result};
use crate::extension::{chi, phi_cutoff, schrodinger_surface, ModelKind, ModelOperator};
use crate::quadrature::QuadratureSpec;
use crate::spherical::{ModeIndex, RadialProfile, SurfaceFunction};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// How the components combine in space.
#[derive(Debug, Clone, PartialEq)]
pub enum Layout {
    /// One radial function, measure `dr`.
    Radial,
    /// `Σ_m c_m Y_m(ω)`, measure `r^{n−1} dr dω`.
    Modes(Vec<ModeIndex>),
}

impl Layout {
    pub fn components(&self) -> usize {
        match self {
            Layout::Radial => 1,
            Layout::Modes(m) => m.len(),
        }
    }
}

pub trait SpaceTimeField: Sync {
    fn layout(&self) -> &Layout;
    /// `s` in `e^{istρ²}`.
    fn time_frequency(&self) -> f64;
    /// Common `ρ`-support of the amplitudes.
    fn rho_support(&self) -> (f64, f64);
    /// Spatial frequency `κ` of the amplitude: it oscillates like `e^{±iκrρ}`.
    fn radial_rate(&self) -> f64;
    /// `d` in the dispersive envelope `|c(t, r)| ≲ C |t|^{−d}`.
    fn decay_power(&self) -> f64;
    /// `F_m(r, ρ)` for every component.
    fn amplitudes(&self, r: f64, rho: f64, out: &mut [Complex64]) -> Result<()>;
}

/// `(f dσ)^∨` of a surface function, or the free Schrödinger evolution of data
/// whose Fourier transform is a surface function.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    n: usize,
    layout: Layout,
    profiles: Vec<RadialProfile<f64>>,
    bessel: Vec<BesselJ<f64>>,
    factors: Vec<Complex64>,
    scale: f64,
    time_frequency: f64,
    support: (f64, f64),
}

impl ExtensionField {
    pub fn new(g: &SurfaceFunction<f64>, quad: &QuadratureSpec) -> Result<Self> {
        Self::build(g, TAU, Complex64::new(1.0, 0.0), quad)
    }

    /// `e^{itΔ}u₀` for `û₀ = g`, via the extension of `η ↦ g(2πη)` at time `2πt`.
    pub fn schrodinger(u0_hat: &SurfaceFunction<f64>, quad: &QuadratureSpec) -> Result<Self> {
        let g = schrodinger_surface(u0_hat);
        Self::build(&g, TAU * TAU, Complex64::new(TAU.powi(u0_hat.n() as i32), 0.0), quad)
    }

    fn build(g: &SurfaceFunction<f64>, s: f64, factor: Complex64, quad: &QuadratureSpec) -> Result<Self> {
        let support = g
            .radial_support()
            .ok_or_else(|| Error::DegenerateData("surface function has no modes".into()))?;
        let modes: Vec<ModeIndex> = g.modes().iter().map(|m| m.index).collect();
        let factors = modes.iter().map(|m| crate::spherical::hankel::i_pow::<f64>(m.k()) * TAU * factor).collect();
        Ok(Self {
            n: g.n(),
            profiles: g.modes().iter().map(|m| m.profile.clone()).collect(),
            bessel: modes.iter().map(|m| BesselJ::with_spec(m.nu::<f64>(), *quad)).collect(),
            layout: Layout::Modes(modes),
            factors,
            scale: g.scale(),
            time_frequency: s,
            support,
        })
    }

    /// Multiplies every mode by `w(index)`.
    pub fn with_mode_weights(mut self, w: impl Fn(&ModeIndex) -> f64) -> Self {
        if let Layout::Modes(modes) = &self.layout {
            for (f, m) in self.factors.iter_mut().zip(modes) {
                *f *= w(m);
            }
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl SpaceTimeField for ExtensionField {
    fn layout(&self) -> &Layout {
        &self.layout
    }

    fn time_frequency(&self) -> f64 {
        self.time_frequency
    }

    fn rho_support(&self) -> (f64, f64) {
        self.support
    }

    fn radial_rate(&self) -> f64 {
        TAU
    }

    fn decay_power(&self) -> f64 {
        0.5 * self.n as f64
    }

    fn amplitudes(&self, r: f64, rho: f64, out: &mut [Complex64]) -> Result<()> {
        let rpow = r.powf(-0.5 * (self.n as f64 - 2.0));
        let rho_pow = rho.powf(0.5 * self.n as f64);
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.profiles[i].eval(rho / self.scale);
            *o = if a.re == 0.0 && a.im == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                let j = self.bessel[i].value(TAU * r * rho)?;
                self.factors[i] * a * (j * rpow * rho_pow)
            };
        }
        Ok(())
    }
}

/// `T_ν a` or `H_ν a` as a radial field on the annulus of radius `R`.
#[derive(Debug, Clone)]
pub struct ModelField {
    op: ModelOperator<f64>,
    profile: RadialProfile<f64>,
    layout: Layout,
}

impl ModelField {
    pub fn new(kind: ModelKind, n: usize, nu: f64, big_r: f64, profile: RadialProfile<f64>, quad: &QuadratureSpec) -> Result<Self> {
        let (lo, _) = profile.support();
        let need = match kind {
            ModelKind::Remainder => nu + nu.cbrt(),
            ModelKind::Oscillatory => nu,
        };
        if !(0.5 * big_r * lo > need) {
            return Err(Error::DomainError(format!(
                "R={big_r} too small for nu={nu}: need R*rho/2 > {need} on the support"
            )));
        }
        Ok(Self { op: ModelOperator::new(kind, n, nu, big_r, *quad)?, profile, layout: Layout::Radial })
    }

    pub fn operator(&self) -> &ModelOperator<f64> {
        &self.op
    }
}

impl SpaceTimeField for ModelField {
    fn layout(&self) -> &Layout {
        &self.layout
    }

    fn time_frequency(&self) -> f64 {
        -1.0
    }

    fn rho_support(&self) -> (f64, f64) {
        self.profile.support()
    }

    fn radial_rate(&self) -> f64 {
        1.0
    }

    fn decay_power(&self) -> f64 {
        0.5
    }

    fn amplitudes(&self, r: f64, rho: f64, out: &mut [Complex64]) -> Result<()> {
        let c = chi(r / self.op.big_r);
        let a = self.profile.eval(rho);
        out[0] = if c == 0.0 || (a.re == 0.0 && a.im == 0.0) {
            Complex64::new(0.0, 0.0)
        } else {
            let w = c * rho.powf(0.5 * self.op.n as f64) * phi_cutoff(rho);
            self.op.kernel(r * rho)? * a * w
        };
        Ok(())
    }
}
