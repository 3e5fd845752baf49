//! Single-resonance Drude–Lorentz dielectric and its nonretarded surface
//! response `Δ(ω) = (ε − 1)/(ε + 1)`.
//!
//! All frequencies are in units of the atomic transition frequency. Every
//! function is defined on the whole real line; negative arguments are
//! evaluated from the formula, not reflected.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Drude–Lorentz parameters `ε(ω) = 1 + ω_p²/(ω₀² − ω² − iωΓ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    omega_p: f64,
    omega_0: f64,
    gamma_big: f64,
}

impl MaterialParams {
    pub fn new(omega_p: f64, omega_0: f64, gamma_big: f64) -> Result<Self> {
        if !(omega_p.is_finite() && omega_p > 0.0) {
            return Err(invalid("omega_p", format!("must be finite and > 0, got {omega_p}")));
        }
        if !(omega_0.is_finite() && omega_0 >= 0.0) {
            return Err(invalid("omega_0", format!("must be finite and >= 0, got {omega_0}")));
        }
        if !(gamma_big.is_finite() && gamma_big > 0.0) {
            return Err(invalid(
                "gamma_big",
                format!("must be finite and > 0, got {gamma_big}"),
            ));
        }
        Ok(Self {
            omega_p,
            omega_0,
            gamma_big,
        })
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn omega_0(&self) -> f64 {
        self.omega_0
    }

    pub fn gamma_big(&self) -> f64 {
        self.gamma_big
    }

    /// Surface-plasmon frequency `√(ω₀² + ω_p²/2)`, where `Re(ε) = −1`.
    /// `Δ_I` peaks here with half-width ≈ `Γ/2`.
    pub fn surface_plasmon(&self) -> f64 {
        (self.omega_0 * self.omega_0 + 0.5 * self.omega_p * self.omega_p).sqrt()
    }
}

impl Default for MaterialParams {
    fn default() -> Self {
        Self {
            omega_p: 1.0,
            omega_0: 1.0,
            gamma_big: 0.1,
        }
    }
}

/// Dimensionless complex value of `ε(ω)` or `Δ(ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexResponse {
    pub re: f64,
    pub im: f64,
}

impl ComplexResponse {
    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl From<Complex64> for ComplexResponse {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<ComplexResponse> for Complex64 {
    fn from(r: ComplexResponse) -> Self {
        Complex64::new(r.re, r.im)
    }
}

fn lorentz_denominator(params: &MaterialParams, omega: f64) -> Complex64 {
    Complex64::new(
        params.omega_0 * params.omega_0 - omega * omega,
        -omega * params.gamma_big,
    )
}

/// `ε(ω) = 1 + ω_p²/(ω₀² − ω² − iωΓ)`.
pub fn permittivity(params: &MaterialParams, omega: f64) -> ComplexResponse {
    let chi = params.omega_p * params.omega_p / lorentz_denominator(params, omega);
    (Complex64::new(1.0, 0.0) + chi).into()
}

/// `Δ(ω) = (ε(ω) − 1)/(ε(ω) + 1)`.
pub fn surface_response(params: &MaterialParams, omega: f64) -> Result<ComplexResponse> {
    let eps: Complex64 = permittivity(params, omega).into();
    let denom = eps + 1.0;
    if denom.re == 0.0 && denom.im == 0.0 {
        return Err(Error::ResponsePole { omega });
    }
    Ok(((eps - 1.0) / denom).into())
}

/// `Δ_I(ω) = Im Δ(ω)`, the surface loss function.
///
/// Evaluated in the algebraically reduced form
/// `Δ = ω_p² / (ω_p² + 2(ω₀² − ω² − iωΓ))`, which has no removable
/// cancellation and gives `Δ_I(0) = 0` exactly. This is the hot path of
/// every force integral.
pub fn delta_imag(params: &MaterialParams, omega: f64) -> f64 {
    let wp2 = params.omega_p * params.omega_p;
    let re = wp2 + 2.0 * (params.omega_0 * params.omega_0 - omega * omega);
    let im = 2.0 * omega * params.gamma_big;
    // Im[wp2 / (re - i im)] = wp2 * im / (re² + im²)
    wp2 * im / (re * re + im * im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(wp: f64, w0: f64, g: f64) -> MaterialParams {
        MaterialParams::new(wp, w0, g).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(MaterialParams::new(0.0, 1.0, 0.1).is_err());
        assert!(MaterialParams::new(1.0, -1.0, 0.1).is_err());
        assert!(MaterialParams::new(1.0, 1.0, 0.0).is_err());
        assert!(MaterialParams::new(1.0, 1.0, f64::NAN).is_err());
        assert!(MaterialParams::new(1.0, 0.0, 0.1).is_ok());
    }

    #[test]
    fn permittivity_static_limit() {
        let e = permittivity(&p(1.0, 1.0, 0.1), 0.0);
        assert_eq!(e, ComplexResponse { re: 2.0, im: 0.0 });
    }

    #[test]
    fn permittivity_on_resonance() {
        let e = permittivity(&p(1.0, 1.0, 1.0), 1.0);
        assert!((e.re - 1.0).abs() < 1e-15);
        assert!((e.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn permittivity_transparent_at_high_frequency() {
        let e = permittivity(&p(1.0, 1.0, 0.1), 1e6);
        assert!((e.re - 1.0).abs() < 1e-10);
        assert!(e.im.abs() < 1e-10);
    }

    #[test]
    fn surface_response_spot_value() {
        let d = surface_response(&p(1.0, 1.0, 1.0), 1.0).unwrap();
        assert!((d.re - 0.2).abs() < 1e-15);
        assert!((d.im - 0.4).abs() < 1e-15);
        assert!((delta_imag(&p(1.0, 1.0, 1.0), 1.0) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn surface_response_vanishes_for_weak_plasma() {
        let d = surface_response(&p(1e-12, 1.0, 0.1), 0.3).unwrap();
        assert!(d.norm() < 1e-20);
    }

    #[test]
    fn crossing_symmetry() {
        let m = p(1.0, 1.0, 0.1);
        for &w in &[1e-6, 0.01, 0.3, 0.7, 1.0, 1.2247, 2.5, 40.0, 1e4] {
            let (ep, em) = (permittivity(&m, w), permittivity(&m, -w));
            assert!(rel(em.re, ep.re) < 1e-12 && rel(em.im, -ep.im) < 1e-12);
            let (dp, dm) = (
                surface_response(&m, w).unwrap(),
                surface_response(&m, -w).unwrap(),
            );
            assert!(rel(dm.re, dp.conj().re) < 1e-12 && rel(dm.im, dp.conj().im) < 1e-12);
        }
    }

    #[test]
    fn delta_imag_matches_full_evaluation() {
        let m = p(1.3, 0.8, 0.07);
        for &w in &[-3.0, -0.5, 1e-5, 0.2, 1.0, 1.13, 7.0] {
            let full = surface_response(&m, w).unwrap().im;
            assert!(rel(delta_imag(&m, w), full) < 1e-12, "w = {w}");
        }
        assert_eq!(delta_imag(&m, 0.0), 0.0);
    }

    #[test]
    fn delta_imag_alternative_identity() {
        // Δ_I = 2 Im ε / |ε + 1|²
        let m = p(1.0, 1.0, 0.1);
        for &w in &[1e-4, 0.5, 1.0, 1.2247, 3.0, 100.0] {
            let e = permittivity(&m, w);
            let alt = 2.0 * e.im / ((e.re + 1.0).powi(2) + e.im * e.im);
            assert!(rel(delta_imag(&m, w), alt) < 1e-12, "w = {w}");
        }
    }

    #[test]
    fn delta_imag_linear_at_small_frequency() {
        let m = p(1.0, 1.0, 0.1);
        let ratio = delta_imag(&m, 1e-4) / delta_imag(&m, 1e-5);
        assert!((ratio - 10.0).abs() < 0.1, "ratio = {ratio}");
    }

    #[test]
    fn surface_plasmon_peak() {
        let m = p(1.0, 1.0, 0.1);
        let ws = m.surface_plasmon();
        assert!(delta_imag(&m, ws) > delta_imag(&m, ws - 0.2));
        assert!(delta_imag(&m, ws) > delta_imag(&m, ws + 0.2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn passive_for_positive_frequency(
                log_w in -6.0f64..4.0,
                wp in 0.1f64..3.0,
                w0 in 0.0f64..3.0,
                g in 1e-3f64..1.0,
            ) {
                let m = MaterialParams::new(wp, w0, g).unwrap();
                let w = 10f64.powf(log_w);
                prop_assert!(delta_imag(&m, w) > 0.0);
                prop_assert!(delta_imag(&m, -w) < 0.0);
            }
        }
    }
}
