//! Brute-force reference values for the force integrals.
//!
//! Shares nothing with [`crate::forces`] beyond the response functions: the
//! wavevector plane is covered in polar coordinates `(k, φ)` with plain
//! trapezoid sums, the kernels are the raw (not antisymmetrized) integrands,
//! and the frequency integral uses [`oracle_integrate`] on a fixed grid with
//! tangent substitution inside each Lorentzian bracket.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::atom::{alpha_imag, lorentzian, sigma_z};
use crate::forces::{ForceOp, Scenario};
use crate::material::delta_imag;
use crate::quadrature::{oracle_integrate, Peak, PeakedIntegrand};

/// Grid sizes of the dense evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleGrid {
    /// Trapezoid intervals on `k ∈ [0, k_max/z]`.
    pub n_k: usize,
    pub k_max: f64,
    /// Nodes in the angular sum.
    pub n_phi: usize,
    /// Points per frequency integral.
    pub n_omega: usize,
    /// Upper frequency limit, in units of the largest material/atom scale.
    pub omega_max: f64,
}

impl Default for OracleGrid {
    fn default() -> Self {
        Self {
            n_k: 200,
            k_max: 20.0,
            n_phi: 64,
            n_omega: 6000,
            omega_max: 4096.0,
        }
    }
}

impl OracleGrid {
    /// Total number of integrand samples.
    pub fn effective_points(&self) -> usize {
        self.n_k * self.n_phi * self.n_omega
    }
}

struct Frequencies {
    omega_max: f64,
    atomic: Vec<Peak>,
    plasmon: Peak,
}

impl Frequencies {
    fn new(s: &Scenario, grid: &OracleGrid) -> Self {
        let w = s.atom.omega_a();
        let scale = w.max(s.material.surface_plasmon()).max(s.material.omega_p());
        Self {
            omega_max: grid.omega_max * scale,
            atomic: vec![Peak::new(w, 0.5 * s.atom.gamma())],
            plasmon: Peak::new(s.material.surface_plasmon(), 0.5 * s.material.gamma_big()),
        }
    }

    /// Peaks for atomic resonances at `±w ± shift` plus dyadic breakpoints
    /// toward zero frequency.
    fn integrand<F: Fn(f64) -> f64>(&self, f: F, shift: f64, extra: &[f64]) -> PeakedIntegrand<F> {
        let mut out = PeakedIntegrand::new(f);
        let mut peaks = vec![self.plasmon];
        for p in &self.atomic {
            for c in [p.center + shift, p.center - shift, shift - p.center, -shift - p.center] {
                if c > 0.0 && c < self.omega_max {
                    peaks.push(Peak::new(c, p.half_width));
                }
            }
        }
        let mut x = self.omega_max;
        while x > 1e-4 {
            out.discontinuities.push(x);
            x *= 0.5;
        }
        out.discontinuities.extend_from_slice(extra);
        out.peaks = peaks;
        out
    }
}

/// Raw frequency integral for one wavevector, `kx` may be negative.
fn omega_part(op: ForceOp, s: &Scenario, freqs: &Frequencies, kx: f64, n: usize) -> f64 {
    let shift = kx * s.v();
    let atom = s.atom;
    let m = s.material;
    let (w0, g) = (atom.omega_a(), atom.gamma());
    let (p1, p2) = (atom.p_lower(), atom.p_upper());
    let semi = |f: &dyn Fn(f64) -> f64, extra: &[f64]| {
        let pi = freqs.integrand(|w| delta_imag(&m, w) * f(w), shift, extra);
        oracle_integrate(&pi, 0.0, freqs.omega_max, n)
    };
    match op {
        ForceOp::TlaFree | ForceOp::OscFree => semi(&|w| alpha_imag(&atom, w - shift), &[]),
        ForceOp::TlaSource => semi(
            &|w| lorentzian(w0 + w - shift, g) + lorentzian(w0 - w + shift, g),
            &[],
        ),
        ForceOp::TlaTotal => semi(
            &|w| p1 * lorentzian(w0 + w - shift, g) + p2 * lorentzian(w0 - w + shift, g),
            &[],
        ),
        ForceOp::TlaGround => semi(&|w| lorentzian(w0 + w - shift, g), &[]),
        ForceOp::OscSource => semi(
            &|w| {
                let d = w - shift;
                let sign = if d > 0.0 {
                    1.0
                } else if d < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                alpha_imag(&atom, w + shift) - alpha_imag(&atom, d) * sign
            },
            &[shift.max(0.0)],
        ),
        ForceOp::OscCombined => {
            if shift <= 0.0 {
                return 0.0;
            }
            let pi = freqs.integrand(
                |w| delta_imag(&m, w) * alpha_imag(&atom, w - shift),
                shift,
                &[],
            );
            oracle_integrate(&pi, 0.0, shift, n)
        }
    }
}

fn prefactor(op: ForceOp, s: &Scenario) -> f64 {
    let d2 = s.atom.d2();
    match op {
        ForceOp::TlaFree => -sigma_z(&s.atom) / (PI * PI),
        ForceOp::TlaSource => -d2 / (3.0 * PI * PI),
        ForceOp::TlaTotal | ForceOp::TlaGround => -2.0 * d2 / (3.0 * PI * PI),
        ForceOp::OscFree | ForceOp::OscSource => 1.0 / (PI * PI),
        ForceOp::OscCombined => 2.0 / (PI * PI),
    }
}

/// Dense-grid reference value of `op` for scenario `s`.
///
/// Populations are taken from the scenario except for `TlaGround`, whose
/// kernel carries none. The half-plane oscillator expressions are evaluated
/// at `|v|` and mirrored for `v < 0`.
pub fn oracle_force(op: ForceOp, s: &Scenario, grid: &OracleGrid) -> f64 {
    if op.half_plane() && s.v() < 0.0 {
        let mirrored = s.with_v(-s.v()).expect("finite velocity");
        return -oracle_force(op, &mirrored, grid);
    }
    let z = s.z();
    let freqs = Frequencies::new(s, grid);
    let k_max = grid.k_max / z;
    let hk = k_max / grid.n_k as f64;

    // φ nodes: periodic midpoint rule on the full circle, trapezoid with
    // endpoints on the half circle (the integrand vanishes at ±π/2).
    let phis: Vec<(f64, f64)> = if op.half_plane() {
        let h = PI / grid.n_phi as f64;
        (0..=grid.n_phi)
            .map(|j| {
                let w = if j == 0 || j == grid.n_phi { 0.5 } else { 1.0 };
                (-0.5 * PI + j as f64 * h, w * h)
            })
            .collect()
    } else {
        let h = 2.0 * PI / grid.n_phi as f64;
        (0..grid.n_phi)
            .map(|j| ((j as f64 + 0.5) * h, h))
            .collect()
    };

    let rows: Vec<f64> = (1..=grid.n_k)
        .into_par_iter()
        .map(|i| {
            let k = i as f64 * hk;
            let wk = if i == grid.n_k { 0.5 * hk } else { hk };
            let radial = k * k * k * (-2.0 * k * z).exp();
            let angular: f64 = phis
                .iter()
                .map(|&(phi, wphi)| {
                    let cos = phi.cos();
                    let kx = k * cos;
                    if kx.abs() < 1e-300 {
                        return 0.0;
                    }
                    wphi * cos * omega_part(op, s, &freqs, kx, grid.n_omega)
                })
                .sum();
            wk * radial * angular
        })
        .collect();
    prefactor(op, s) * rows.iter().sum::<f64>()
}
