//! Friction force integrals for the two-level atom and the linear oscillator.
//!
//! Every planar wavevector integral is written in antisymmetrized half-plane
//! form,
//!
//! ```text
//! ∫d²k k_x k e^{−2kz} K(k_x v)  =  2 ∫₀^∞ dk_x k_x G(k_x) [K(k_x v) − K(−k_x v)],
//! G(k_x) = ∫₀^∞ dk_y k e^{−2kz},   k = √(k_x² + k_y²),
//! ```
//!
//! so `F(0) = 0` and `F(−v) = −F(v)` hold by construction. The frequency
//! integral `K` is innermost; it depends on `k_x` only through `k_x v`, so it
//! is evaluated once per `k_x` node and multiplied by the `k_y` integral `G`.
//!
//! Reduced units: frequencies in units of the transition frequency, lengths in
//! units of `z`, forces in units of `|d|²/z⁴`.

use std::f64::consts::PI;
use std::fmt;

use crate::atom::{alpha_imag, lorentzian, sigma_z, AtomParams};
use crate::error::{invalid, Error, Result};
use crate::material::{delta_imag, MaterialParams};
use crate::quadrature::{
    integrate_nested, integrate_semi_infinite_nested, Estimate, Peak, QuadratureSpec,
};

/// Which atomic model a scenario describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Tla,
    Oscillator,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Tla => "tla",
            Model::Oscillator => "oscillator",
        })
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tla" | "two-level" | "two_level" => Ok(Model::Tla),
            "oscillator" | "osc" => Ok(Model::Oscillator),
            other => Err(format!("unknown model `{other}` (expected tla or oscillator)")),
        }
    }
}

/// Geometry, kinematics and model of one force evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub atom: AtomParams,
    pub material: MaterialParams,
    z: f64,
    v: f64,
    pub model: Model,
}

impl Scenario {
    pub fn new(atom: AtomParams, material: MaterialParams, z: f64, v: f64, model: Model) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(invalid("z", format!("must be finite and > 0, got {z}")));
        }
        if !v.is_finite() {
            return Err(invalid("v", format!("must be finite, got {v}")));
        }
        Ok(Self {
            atom,
            material,
            z,
            v,
            model,
        })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn with_v(&self, v: f64) -> Result<Self> {
        Self::new(self.atom, self.material, self.z, v, self.model)
    }

    pub fn with_z(&self, z: f64) -> Result<Self> {
        Self::new(self.atom, self.material, z, self.v, self.model)
    }

    pub fn with_model(&self, model: Model) -> Self {
        Self { model, ..*self }
    }

    pub fn with_atom(&self, atom: AtomParams) -> Self {
        Self { atom, ..*self }
    }
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            atom: AtomParams::default(),
            material: MaterialParams::default(),
            z: 1.0,
            v: 0.01,
            model: Model::Tla,
        }
    }
}

/// Unit tag carried by every force value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ForceUnit;

impl fmt::Display for ForceUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|d|^2/z^4")
    }
}

/// Free-field part, source part and total force of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    pub f0: Estimate,
    pub fs: Estimate,
    pub total: Estimate,
    pub unit: ForceUnit,
}

impl ForceResult {
    pub fn err_estimate(&self) -> f64 {
        self.total.err_estimate
    }
}

fn require_model(s: &Scenario, model: Model, op: &str) -> Result<()> {
    if s.model != model {
        return Err(Error::Precondition(format!(
            "{op} requires model {model}, scenario has {}",
            s.model
        )));
    }
    Ok(())
}

/// Frequency-domain structure shared by all kernels: the atomic Lorentzians
/// sit at `±Ω ± s` and the surface plasmon at `ω_sp`.
fn omega_peaks(s: &Scenario, shift: f64) -> Vec<Peak> {
    let w = s.atom.omega_a();
    let hw = 0.5 * s.atom.gamma();
    let mut peaks: Vec<Peak> = [w + shift, w - shift, shift - w, -shift - w]
        .into_iter()
        .filter(|&c| c > -10.0 * hw)
        .map(|c| Peak::new(c, hw))
        .collect();
    peaks.push(Peak::new(
        s.material.surface_plasmon(),
        0.5 * s.material.gamma_big(),
    ));
    peaks
}

fn omega_decay_scale(s: &Scenario) -> f64 {
    s.atom
        .omega_a()
        .max(s.material.surface_plasmon())
        .max(s.material.omega_p())
}

/// `∫₀^∞ dω Δ_I(ω)·kernel(ω)` with peak annotations for shift `s = k_x v`.
fn omega_integral<K>(s: &Scenario, shift: f64, breaks: &[f64], q: &QuadratureSpec, kernel: K) -> Result<Estimate>
where
    K: Fn(f64) -> f64,
{
    if shift == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let m = s.material;
    integrate_semi_infinite_nested(
        |w| Ok(Estimate::exact(delta_imag(&m, w) * kernel(w))),
        &omega_peaks(s, shift),
        breaks,
        omega_decay_scale(s),
        q,
    )
}

/// `G(k_x) = ∫₀^∞ dk_y k e^{−2kz}`.
fn ky_factor(kx: f64, z: f64, q: &QuadratureSpec) -> Result<Estimate> {
    integrate_semi_infinite_nested(
        |ky| {
            let k = kx.hypot(ky);
            Ok(Estimate::exact(k * (-2.0 * k * z).exp()))
        },
        &[],
        &[],
        0.5 / z,
        q,
    )
}

/// `prefactor · 2∫₀^∞dk_x k_x G(k_x) I(k_x)` where `I` is the inner frequency
/// integral at shift `k_x v`.
fn wavevector_integral<I>(s: &Scenario, q: &QuadratureSpec, prefactor: f64, inner: I) -> Result<Estimate>
where
    I: Fn(f64) -> Result<Estimate>,
{
    if s.v == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let z = s.z;
    let r = integrate_semi_infinite_nested(
        |kx| {
            if kx == 0.0 {
                return Ok(Estimate::exact(0.0));
            }
            let g = ky_factor(kx, z, q)?;
            let i = inner(kx)?;
            Ok(Estimate::new(
                kx * g.value * i.value,
                kx * (g.err_estimate * i.value.abs() + g.value.abs() * i.err_estimate),
            ))
        },
        &[],
        &[],
        0.5 / z,
        q,
    )?;
    Ok(r.scale(2.0 * prefactor))
}

fn lorentz_pair(w0: f64, gamma: f64, w: f64, shift: f64) -> (f64, f64) {
    (lorentzian(w0 + w - shift, gamma), lorentzian(w0 - w + shift, gamma))
}

/// Free-field two-level force,
/// `F₀ = −(⟨σ_z⟩/π²) ∫d²k k_x k e^{−2kz} ∫₀^∞dω Δ_I(ω) α_I(ω − k_x v)`.
pub fn tla_force_free(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    require_model(s, Model::Tla, "tla_force_free")?;
    free_field(s, q, -sigma_z(&s.atom) / (PI * PI))
}

fn free_field(s: &Scenario, q: &QuadratureSpec, prefactor: f64) -> Result<Estimate> {
    if prefactor == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let atom = s.atom;
    wavevector_integral(s, q, prefactor, |kx| {
        let shift = kx * s.v;
        omega_integral(s, shift, &[], q, |w| {
            alpha_imag(&atom, w - shift) - alpha_imag(&atom, w + shift)
        })
    })
}

/// Source-field two-level force,
/// `F_S = −(|d|²/3π²) ∫d²k k k_x e^{−2kz} ∫₀^∞dω Δ_I(ω)[L(Ω+ω−k_x v) + L(Ω−ω+k_x v)]`.
pub fn tla_force_source(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    require_model(s, Model::Tla, "tla_force_source")?;
    let (w0, g) = (s.atom.omega_a(), s.atom.gamma());
    wavevector_integral(s, q, -s.atom.d2() / (3.0 * PI * PI), |kx| {
        let shift = kx * s.v;
        omega_integral(s, shift, &[], q, |w| {
            let (a, b) = lorentz_pair(w0, g, w, shift);
            let (c, d) = lorentz_pair(w0, g, w, -shift);
            (a - c) + (b - d)
        })
    })
}

/// Two-level force from the combined population-weighted kernel,
/// `F = −(2|d|²/3π²) ∫d²k k k_x e^{−2kz} ∫₀^∞dω Δ_I(ω)[p₁L(Ω+ω−k_x v) + p₂L(Ω−ω+k_x v)]`.
pub fn tla_force_combined(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    require_model(s, Model::Tla, "tla_force_combined")?;
    let (w0, g) = (s.atom.omega_a(), s.atom.gamma());
    let (p1, p2) = (s.atom.p_lower(), s.atom.p_upper());
    wavevector_integral(s, q, -2.0 * s.atom.d2() / (3.0 * PI * PI), |kx| {
        let shift = kx * s.v;
        omega_integral(s, shift, &[], q, |w| {
            let (a, b) = lorentz_pair(w0, g, w, shift);
            let (c, d) = lorentz_pair(w0, g, w, -shift);
            let lower = if p1 != 0.0 { p1 * (a - c) } else { 0.0 };
            let upper = if p2 != 0.0 { p2 * (b - d) } else { 0.0 };
            lower + upper
        })
    })
}

/// Complete two-level force with its free/source decomposition. `total` is
/// computed from the combined kernel, not by summing `f0` and `fs`.
pub fn tla_force_total(s: &Scenario, q: &QuadratureSpec) -> Result<ForceResult> {
    Ok(ForceResult {
        f0: tla_force_free(s, q)?,
        fs: tla_force_source(s, q)?,
        total: tla_force_combined(s, q)?,
        unit: ForceUnit,
    })
}

/// Ground-state two-level friction force,
/// `F = −(2|d|²/3π²) ∫d²k k k_x e^{−2kz} ∫₀^∞dω Δ_I(ω) L(Ω+ω−k_x v)`,
/// regardless of the populations stored in the scenario.
pub fn tla_force_ground(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    require_model(s, Model::Tla, "tla_force_ground")?;
    let (w0, g) = (s.atom.omega_a(), s.atom.gamma());
    wavevector_integral(s, q, -2.0 * s.atom.d2() / (3.0 * PI * PI), |kx| {
        let shift = kx * s.v;
        omega_integral(s, shift, &[], q, |w| {
            lorentzian(w0 + w - shift, g) - lorentzian(w0 + w + shift, g)
        })
    })
}

/// Free-field oscillator force: the two-level expression with `⟨σ_z⟩ = −1`.
pub fn osc_force_free(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    require_model(s, Model::Oscillator, "osc_force_free")?;
    free_field(s, q, 1.0 / (PI * PI))
}

/// Source-field oscillator force at zero temperature,
/// `F_S = (1/π²) ∫dk_y∫₀^∞dk_x k k_x e^{−2kz} ∫₀^∞dω Δ_I(ω)[α_I(ω+k_x v) − α_I(ω−k_x v) sign(ω−k_x v)]`.
///
/// The expression holds for `v ≥ 0`; negative velocities are mapped by mirror
/// symmetry, `F_S(−v) = −F_S(v)`.
pub fn osc_force_source(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    require_model(s, Model::Oscillator, "osc_force_source")?;
    if s.v < 0.0 {
        return Ok(osc_force_source(&s.with_v(-s.v)?, q)?.scale(-1.0));
    }
    let atom = s.atom;
    // The half-plane k_x > 0 form already carries the antisymmetry; the
    // wavevector helper's factor 2 is the k_y fold.
    wavevector_integral(s, q, 1.0 / (PI * PI), |kx| {
        let shift = kx * s.v;
        omega_integral(s, shift, &[shift], q, |w| {
            let d = w - shift;
            alpha_imag(&atom, w + shift) - alpha_imag(&atom, d) * d.signum()
        })
    })
}

/// Combined oscillator force with the step function applied,
/// `F = (2/π²) ∫dk_y∫₀^∞dk_x k k_x e^{−2kz} ∫₀^{k_x v}dω Δ_I(ω) α_I(ω−k_x v)`,
/// with `f0`/`fs` holding the separately evaluated free and source parts.
///
/// Defined by oddness for `v < 0`.
pub fn osc_force_combined(s: &Scenario, q: &QuadratureSpec) -> Result<ForceResult> {
    Ok(ForceResult {
        f0: osc_force_free(s, q)?,
        fs: osc_force_source(s, q)?,
        total: osc_force_stepped(s, q)?,
        unit: ForceUnit,
    })
}

/// The `total` field of [`osc_force_combined`] on its own.
pub fn osc_force_stepped(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    require_model(s, Model::Oscillator, "osc_force_combined")?;
    if s.v < 0.0 {
        return Ok(osc_force_stepped(&s.with_v(-s.v)?, q)?.scale(-1.0));
    }
    let atom = s.atom;
    let m = s.material;
    wavevector_integral(s, q, 2.0 / (PI * PI), |kx| {
        let shift = kx * s.v;
        if shift == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        integrate_nested(
            |w| Ok(Estimate::exact(delta_imag(&m, w) * alpha_imag(&atom, w - shift))),
            &omega_peaks(s, shift),
            &[],
            0.0,
            shift,
            q,
        )
    })
}

/// Total force of the scenario's own model: the population-weighted two-level
/// force, or the stepped oscillator force.
pub fn total_force(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    match s.model {
        Model::Tla => tla_force_combined(s, q),
        Model::Oscillator => osc_force_stepped(s, q),
    }
}

/// Free-field force of the scenario's own model.
pub fn free_force(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    match s.model {
        Model::Tla => tla_force_free(s, q),
        Model::Oscillator => osc_force_free(s, q),
    }
}

/// Source-field force of the scenario's own model.
pub fn source_force(s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
    match s.model {
        Model::Tla => tla_force_source(s, q),
        Model::Oscillator => osc_force_source(s, q),
    }
}

/// Full decomposition for the scenario's own model.
pub fn evaluate(s: &Scenario, q: &QuadratureSpec) -> Result<ForceResult> {
    match s.model {
        Model::Tla => tla_force_total(s, q),
        Model::Oscillator => osc_force_combined(s, q),
    }
}

/// Every force operation, for batteries that iterate over all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForceOp {
    TlaFree,
    TlaSource,
    TlaTotal,
    TlaGround,
    OscFree,
    OscSource,
    OscCombined,
}

impl ForceOp {
    pub const ALL: [ForceOp; 7] = [
        ForceOp::TlaFree,
        ForceOp::TlaSource,
        ForceOp::TlaTotal,
        ForceOp::TlaGround,
        ForceOp::OscFree,
        ForceOp::OscSource,
        ForceOp::OscCombined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ForceOp::TlaFree => "tla_force_free",
            ForceOp::TlaSource => "tla_force_source",
            ForceOp::TlaTotal => "tla_force_total",
            ForceOp::TlaGround => "tla_force_ground",
            ForceOp::OscFree => "osc_force_free",
            ForceOp::OscSource => "osc_force_source",
            ForceOp::OscCombined => "osc_force_combined",
        }
    }

    pub fn model(self) -> Model {
        match self {
            ForceOp::TlaFree | ForceOp::TlaSource | ForceOp::TlaTotal | ForceOp::TlaGround => {
                Model::Tla
            }
            ForceOp::OscFree | ForceOp::OscSource | ForceOp::OscCombined => Model::Oscillator,
        }
    }

    /// Integrals written over the half-plane `k_x > 0` only.
    pub fn half_plane(self) -> bool {
        matches!(self, ForceOp::OscSource | ForceOp::OscCombined)
    }

    /// Evaluates the operation on `s` with the model switched to
    /// [`ForceOp::model`]. `TlaTotal` and `OscCombined` return the total.
    pub fn evaluate(self, s: &Scenario, q: &QuadratureSpec) -> Result<Estimate> {
        let s = s.with_model(self.model());
        match self {
            ForceOp::TlaFree => tla_force_free(&s, q),
            ForceOp::TlaSource => tla_force_source(&s, q),
            ForceOp::TlaTotal => tla_force_combined(&s, q),
            ForceOp::TlaGround => tla_force_ground(&s, q),
            ForceOp::OscFree => osc_force_free(&s, q),
            ForceOp::OscSource => osc_force_source(&s, q),
            ForceOp::OscCombined => osc_force_stepped(&s, q),
        }
    }
}
