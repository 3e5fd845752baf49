//! Two-level atom: imaginary polarizability, static populations and the
//! near-surface linewidth law.

use log::warn;

use crate::error::{invalid, Result};

/// Lorentzian line shape `(γ/2)/(x² + γ²/4)`.
#[inline]
pub fn lorentzian(x: f64, gamma: f64) -> f64 {
    let hw = 0.5 * gamma;
    hw / (x * x + hw * hw)
}

/// Two-level atom parameters in reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomParams {
    d2: f64,
    omega_a: f64,
    gamma: f64,
    p_lower: f64,
    p_upper: f64,
}

const POPULATION_TOL: f64 = 1e-12;

impl AtomParams {
    pub fn new(d2: f64, omega_a: f64, gamma: f64, p_lower: f64, p_upper: f64) -> Result<Self> {
        if !(d2.is_finite() && d2 > 0.0) {
            return Err(invalid("d2", format!("must be finite and > 0, got {d2}")));
        }
        if !(omega_a.is_finite() && omega_a > 0.0) {
            return Err(invalid("omega_a", format!("must be finite and > 0, got {omega_a}")));
        }
        if !(gamma.is_finite() && gamma > 0.0 && gamma < omega_a) {
            return Err(invalid(
                "gamma",
                format!("must satisfy 0 < gamma < omega_a = {omega_a}, got {gamma}"),
            ));
        }
        if gamma > 0.1 * omega_a {
            warn!("gamma = {gamma} is not small compared with omega_a = {omega_a}");
        }
        if !(p_lower.is_finite() && p_lower >= 0.0) {
            return Err(invalid("p_lower", format!("must be >= 0, got {p_lower}")));
        }
        if !(p_upper.is_finite() && p_upper >= 0.0) {
            return Err(invalid("p_upper", format!("must be >= 0, got {p_upper}")));
        }
        if (p_lower + p_upper - 1.0).abs() > POPULATION_TOL {
            return Err(invalid(
                "p_upper",
                format!("p_lower + p_upper must equal 1, got {}", p_lower + p_upper),
            ));
        }
        Ok(Self {
            d2,
            omega_a,
            gamma,
            p_lower,
            p_upper,
        })
    }

    /// Atom with populations set from the population difference `⟨σ_z⟩`.
    pub fn from_sigma_z(d2: f64, omega_a: f64, gamma: f64, sigma_z: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&sigma_z) {
            return Err(invalid("sigma_z", format!("must lie in [-1, 1], got {sigma_z}")));
        }
        Self::new(d2, omega_a, gamma, 0.5 * (1.0 - sigma_z), 0.5 * (1.0 + sigma_z))
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn p_lower(&self) -> f64 {
        self.p_lower
    }

    pub fn p_upper(&self) -> f64 {
        self.p_upper
    }

    /// Same atom with a different linewidth.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.d2, self.omega_a, gamma, self.p_lower, self.p_upper)
    }

    /// Same atom with different populations.
    pub fn with_populations(&self, p_lower: f64, p_upper: f64) -> Result<Self> {
        Self::new(self.d2, self.omega_a, self.gamma, p_lower, p_upper)
    }

    pub fn ground_state(&self) -> Self {
        Self {
            p_lower: 1.0,
            p_upper: 0.0,
            ..*self
        }
    }

    pub fn excited_state(&self) -> Self {
        Self {
            p_lower: 0.0,
            p_upper: 1.0,
            ..*self
        }
    }
}

impl Default for AtomParams {
    fn default() -> Self {
        Self {
            d2: 3.0,
            omega_a: 1.0,
            gamma: DEFAULT_GAMMA_REF,
            p_lower: 1.0,
            p_upper: 0.0,
        }
    }
}

/// Reference linewidth at unit distance used by the default scenario.
pub const DEFAULT_GAMMA_REF: f64 = 1e-4;

/// `α_I(ω) = (|d|²/3)·[L(Ω − ω) − L(Ω + ω)]` with `L` the linewidth-`γ`
/// Lorentzian. Odd in `ω`, positive for `ω > 0`.
#[inline]
pub fn alpha_imag(params: &AtomParams, omega: f64) -> f64 {
    let w = params.omega_a;
    params.d2 / 3.0 * (lorentzian(w - omega, params.gamma) - lorentzian(w + omega, params.gamma))
}

/// Population difference `⟨σ_z⟩ = p₂ − p₁`.
pub fn sigma_z(params: &AtomParams) -> f64 {
    params.p_upper - params.p_lower
}

/// Linewidth at distance `z` given its value at `z_ref`, using the `z⁻³` law.
pub fn gamma_at_distance(gamma_ref: f64, z_ref: f64, z: f64) -> Result<f64> {
    if !(gamma_ref.is_finite() && gamma_ref > 0.0) {
        return Err(invalid("gamma_ref", format!("must be > 0, got {gamma_ref}")));
    }
    if !(z_ref.is_finite() && z_ref > 0.0) {
        return Err(invalid("z_ref", format!("must be > 0, got {z_ref}")));
    }
    if !(z.is_finite() && z > 0.0) {
        return Err(invalid("z", format!("must be > 0, got {z}")));
    }
    Ok(gamma_ref * (z_ref / z).powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(AtomParams::new(0.0, 1.0, 1e-4, 1.0, 0.0).is_err());
        assert!(AtomParams::new(3.0, 0.0, 1e-4, 1.0, 0.0).is_err());
        assert!(AtomParams::new(3.0, 1.0, -1.0, 1.0, 0.0).is_err());
        assert!(AtomParams::new(3.0, 1.0, 1.5, 1.0, 0.0).is_err());
        assert!(AtomParams::new(3.0, 1.0, 1e-4, 0.7, 0.7).is_err());
        assert!(AtomParams::new(3.0, 1.0, 1e-4, -0.1, 1.1).is_err());
        assert!(AtomParams::new(3.0, 1.0, 1e-4, 0.25, 0.75).is_ok());
    }

    #[test]
    fn alpha_imag_zero_at_origin() {
        assert_eq!(alpha_imag(&AtomParams::default(), 0.0), 0.0);
    }

    #[test]
    fn alpha_imag_on_resonance() {
        let a = AtomParams::new(3.0, 1.0, 1e-3, 1.0, 0.0).unwrap();
        let g: f64 = 1e-3;
        let expected = (g / 2.0) / (g * g / 4.0) - (g / 2.0) / (4.0 + g * g / 4.0);
        assert!((alpha_imag(&a, 1.0) - expected).abs() <= 1e-12 * expected);
        assert!((alpha_imag(&a, 1.0) - (2000.0 - 1.25e-4)).abs() < 1e-8);
    }

    #[test]
    fn alpha_imag_odd() {
        let a = AtomParams::default();
        let (p, m) = (alpha_imag(&a, 0.37), alpha_imag(&a, -0.37));
        assert!((p + m).abs() <= 1e-12 * p.abs());
    }

    #[test]
    fn sigma_z_values() {
        let a = AtomParams::default();
        assert_eq!(sigma_z(&a.ground_state()), -1.0);
        assert_eq!(sigma_z(&a.excited_state()), 1.0);
        assert_eq!(sigma_z(&a.with_populations(0.5, 0.5).unwrap()), 0.0);
        let b = AtomParams::from_sigma_z(3.0, 1.0, 1e-4, 0.4).unwrap();
        assert!((sigma_z(&b) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn cube_law() {
        assert_eq!(gamma_at_distance(1e-4, 1.0, 1.0).unwrap(), 1e-4);
        assert!((gamma_at_distance(1e-4, 1.0, 2.0).unwrap() - 1.25e-5).abs() < 1e-20);
        assert!((gamma_at_distance(1e-4, 1.0, 0.5).unwrap() - 8e-4).abs() < 1e-18);
        assert!(gamma_at_distance(1e-4, 1.0, 0.0).is_err());
        assert!(gamma_at_distance(1e-4, -1.0, 1.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn alpha_imag_positive_and_odd(log_w in -6.0f64..3.0, log_g in -6.0f64..-1.5) {
                let a = AtomParams::new(3.0, 1.0, 10f64.powf(log_g), 1.0, 0.0).unwrap();
                let w = 10f64.powf(log_w);
                let p = alpha_imag(&a, w);
                prop_assert!(p > 0.0);
                prop_assert!((p + alpha_imag(&a, -w)).abs() <= 1e-12 * p);
            }
        }
    }
}
