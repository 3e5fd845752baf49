//! Velocity and distance sweeps, log–log power-law fits, and the two-model
//! comparison.

use log::warn;
use rayon::prelude::*;

use crate::atom::gamma_at_distance;
use crate::error::{Error, Result};
use crate::forces::{self, Model, Scenario};
use crate::quadrature::{Estimate, QuadratureSpec};

/// Default low-velocity fit window, in units of `Ω·z`.
pub const FIT_WINDOW: (f64, f64) = (1e-3, 1e-2);
/// Default number of log-spaced points in the fit window.
pub const FIT_POINTS: usize = 8;
/// Fewest points accepted by [`fit_exponent`].
pub const MIN_FIT_POINTS: usize = 5;

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Velocity,
    Distance,
}

impl std::fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SweepVariable::Velocity => "velocity",
            SweepVariable::Distance => "distance",
        })
    }
}

impl std::str::FromStr for SweepVariable {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "velocity" | "v" => Ok(SweepVariable::Velocity),
            "distance" | "z" => Ok(SweepVariable::Distance),
            other => Err(format!("unknown sweep variable `{other}` (expected velocity or distance)")),
        }
    }
}

/// Which force components a sweep computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Components {
    pub f0: bool,
    pub fs: bool,
    pub total: bool,
}

impl Components {
    pub const ALL: Components = Components {
        f0: true,
        fs: true,
        total: true,
    };
    pub const TOTAL: Components = Components {
        f0: false,
        fs: false,
        total: true,
    };

    pub fn is_empty(&self) -> bool {
        !(self.f0 || self.fs || self.total)
    }
}

impl std::fmt::Display for Components {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<&str> = [(self.f0, "f0"), (self.fs, "fs"), (self.total, "total")]
            .into_iter()
            .filter_map(|(on, n)| on.then_some(n))
            .collect();
        f.write_str(&names.join(","))
    }
}

impl std::str::FromStr for Components {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut c = Components {
            f0: false,
            fs: false,
            total: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "f0" => c.f0 = true,
                "fs" => c.fs = true,
                "total" => c.total = true,
                other => return Err(format!("unknown component `{other}` (expected f0, fs, total)")),
            }
        }
        if c.is_empty() {
            return Err("at least one component is required".into());
        }
        Ok(c)
    }
}

/// `γ(z) = γ_ref (z_ref/z)³`, applied at every distance of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaLaw {
    pub gamma_ref: f64,
    pub z_ref: f64,
}

impl GammaLaw {
    /// The scenario with its linewidth set for its own distance.
    pub fn apply(&self, s: &Scenario) -> Result<Scenario> {
        let g = gamma_at_distance(self.gamma_ref, self.z_ref, s.z())?;
        Ok(s.with_atom(s.atom.with_gamma(g)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub grid: Vec<f64>,
    pub scenario_base: Scenario,
    pub components: Components,
    pub gamma_law: Option<GammaLaw>,
}

impl SweepSpec {
    pub fn velocity(base: Scenario, grid: Vec<f64>) -> Self {
        Self {
            variable: SweepVariable::Velocity,
            grid,
            scenario_base: base,
            components: Components::TOTAL,
            gamma_law: None,
        }
    }

    pub fn distance(base: Scenario, grid: Vec<f64>, gamma_law: Option<GammaLaw>) -> Self {
        Self {
            variable: SweepVariable::Distance,
            grid,
            scenario_base: base,
            components: Components::TOTAL,
            gamma_law,
        }
    }

    pub fn with_components(mut self, components: Components) -> Self {
        self.components = components;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::Precondition("sweep grid is empty".into()));
        }
        if self.grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::Precondition("sweep grid values must be finite".into()));
        }
        if let Some(w) = self.grid.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::Precondition(format!(
                "sweep grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if self.variable == SweepVariable::Distance && self.grid[0] <= 0.0 {
            return Err(Error::Precondition("distance grid must be positive".into()));
        }
        if self.components.is_empty() {
            return Err(Error::Precondition("no force components requested".into()));
        }
        Ok(())
    }

    fn scenario_at(&self, x: f64) -> Result<Scenario> {
        let s = match self.variable {
            SweepVariable::Velocity => self.scenario_base.with_v(x)?,
            SweepVariable::Distance => self.scenario_base.with_z(x)?,
        };
        match self.gamma_law {
            Some(law) => law.apply(&s),
            None => Ok(s),
        }
    }
}

/// One grid point of a sweep. A failed evaluation is kept in `error` and
/// leaves the component fields empty.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub f0: Option<Estimate>,
    pub fs: Option<Estimate>,
    pub total: Option<Estimate>,
    pub error: Option<Error>,
}

impl SweepPoint {
    /// Error estimate of the total, or the summed estimates of whatever was
    /// computed when the total was not requested.
    pub fn err_estimate(&self) -> Option<f64> {
        if let Some(t) = self.total {
            return Some(t.err_estimate);
        }
        let parts: Vec<f64> = [self.f0, self.fs]
            .into_iter()
            .flatten()
            .map(|e| e.err_estimate)
            .collect();
        (!parts.is_empty()).then(|| parts.iter().sum())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub variable: SweepVariable,
    pub model: Model,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepPoint> {
        self.points.iter().filter(|p| p.error.is_some())
    }

    /// Fit of the total force against the swept variable, with the half-window
    /// sensitivity check.
    pub fn fit_total(&self) -> Result<FitReport> {
        let mut forces = Vec::with_capacity(self.points.len());
        for p in &self.points {
            match (&p.total, &p.error) {
                (Some(t), None) => forces.push(t.value),
                (_, Some(e)) => {
                    return Err(Error::Precondition(format!(
                        "point {} failed: {e}",
                        p.value
                    )))
                }
                (None, None) => {
                    return Err(Error::Precondition("total force not computed".into()))
                }
            }
        }
        fit_report(&self.grid(), &forces)
    }
}

fn evaluate_point(spec: &SweepSpec, x: f64, q: &QuadratureSpec) -> SweepPoint {
    let c = spec.components;
    let run = || -> Result<(Option<Estimate>, Option<Estimate>, Option<Estimate>)> {
        let s = spec.scenario_at(x)?;
        let f0 = c.f0.then(|| forces::free_force(&s, q)).transpose()?;
        let fs = c.fs.then(|| forces::source_force(&s, q)).transpose()?;
        let total = c.total.then(|| forces::total_force(&s, q)).transpose()?;
        Ok((f0, fs, total))
    };
    match run() {
        Ok((f0, fs, total)) => SweepPoint {
            value: x,
            f0,
            fs,
            total,
            error: None,
        },
        Err(e) => SweepPoint {
            value: x,
            f0: None,
            fs: None,
            total: None,
            error: Some(e),
        },
    }
}

/// Warns when the velocity window leaves the low-velocity regime, i.e. when
/// `k v` at the dominant wavevector `k ≈ 1/z` exceeds `0.1·Ω`.
pub fn regime_warning(s: &Scenario, v_max: f64) -> Option<String> {
    let kv = v_max.abs() / s.z();
    (kv > 0.1 * s.atom.omega_a()).then(|| {
        format!(
            "v_max/z = {kv:.3e} exceeds 0.1·Ω = {:.3e}; the low-velocity power law may not apply",
            0.1 * s.atom.omega_a()
        )
    })
}

/// Evaluates every grid point (in parallel, results in grid order).
pub fn run_sweep(spec: &SweepSpec, q: &QuadratureSpec) -> Result<SweepResult> {
    spec.validate()?;
    q.validate()?;
    if spec.variable == SweepVariable::Velocity {
        if let Some(w) = regime_warning(&spec.scenario_base, *spec.grid.last().unwrap()) {
            warn!("{w}");
        }
    }
    let points = spec
        .grid
        .par_iter()
        .map(|&x| evaluate_point(spec, x, q))
        .collect();
    Ok(SweepResult {
        variable: spec.variable,
        model: spec.scenario_base.model,
        points,
    })
}

/// Ordinary least-squares fit of `ln|F|` against `ln x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub exponent: f64,
    pub prefactor_log: f64,
    pub r_squared: f64,
    pub stderr: f64,
}

fn check_fit_inputs(grid: &[f64], forces: &[f64], min_points: usize) -> Result<()> {
    if grid.len() != forces.len() {
        return Err(Error::Precondition(format!(
            "grid has {} points but {} forces were given",
            grid.len(),
            forces.len()
        )));
    }
    if grid.len() < min_points {
        return Err(Error::Precondition(format!(
            "power-law fit needs at least {min_points} points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::Precondition("fit grid values must be positive".into()));
    }
    if forces.iter().any(|&f| f == 0.0 || !f.is_finite()) {
        return Err(Error::Precondition("fit forces must be finite and nonzero".into()));
    }
    let positive = forces[0] > 0.0;
    if forces.iter().any(|&f| (f > 0.0) != positive) {
        return Err(Error::Precondition("forces change sign across the fit grid".into()));
    }
    Ok(())
}

fn ols(grid: &[f64], forces: &[f64]) -> FitResult {
    let n = grid.len() as f64;
    let xs: Vec<f64> = grid.iter().map(|x| x.ln()).collect();
    let ys: Vec<f64> = forces.iter().map(|f| f.abs().ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let stderr = if grid.len() > 2 {
        (ss_res / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    FitResult {
        exponent: slope,
        prefactor_log: intercept,
        r_squared,
        stderr,
    }
}

/// Power-law exponent of `|F|` against the grid variable.
pub fn fit_exponent(grid: &[f64], forces: &[f64]) -> Result<FitResult> {
    check_fit_inputs(grid, forces, MIN_FIT_POINTS)?;
    Ok(ols(grid, forces))
}

/// Full-window fit plus fits on the lower and upper halves of the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport {
    pub full: FitResult,
    pub lower: FitResult,
    pub upper: FitResult,
    /// The half-window exponents differ by more than twice their combined
    /// standard errors: the window is probably not asymptotic.
    pub window_sensitive: bool,
}

pub fn fit_report(grid: &[f64], forces: &[f64]) -> Result<FitReport> {
    let full = fit_exponent(grid, forces)?;
    let half = grid.len().div_ceil(2);
    let lo = ols(&grid[..half], &forces[..half]);
    let hi = ols(&grid[grid.len() - half..], &forces[forces.len() - half..]);
    let window_sensitive = (lo.exponent - hi.exponent).abs() > 2.0 * (lo.stderr + hi.stderr);
    Ok(FitReport {
        full,
        lower: lo,
        upper: hi,
        window_sensitive,
    })
}

/// One row of the model comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub v: f64,
    pub f_tla: Estimate,
    pub f_osc: Estimate,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub tla_fit: FitResult,
    pub osc_fit: FitResult,
}

impl Comparison {
    /// `F_osc/F_TLA` is smaller at the lowest velocity than at the highest.
    pub fn ratio_vanishes_at_low_velocity(&self) -> bool {
        match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) => a.ratio.abs() < b.ratio.abs(),
            _ => false,
        }
    }
}

/// Evaluates the two-level force (with the base populations) and the
/// oscillator force on the same velocity grid and fits both exponents.
pub fn compare_models(scenario_base: &Scenario, grid: &[f64], q: &QuadratureSpec) -> Result<Comparison> {
    let placeholder = vec![1.0; grid.len()];
    check_fit_inputs(grid, &placeholder, MIN_FIT_POINTS)?;
    let spec_for = |model| {
        SweepSpec::velocity(scenario_base.with_model(model), grid.to_vec())
    };
    let tla = run_sweep(&spec_for(Model::Tla), q)?;
    let osc = run_sweep(&spec_for(Model::Oscillator), q)?;
    let mut rows = Vec::with_capacity(grid.len());
    for (a, b) in tla.points.iter().zip(&osc.points) {
        if let Some(e) = a.error.as_ref().or(b.error.as_ref()) {
            return Err(e.clone());
        }
        let (ft, fo) = (a.total.unwrap(), b.total.unwrap());
        rows.push(ComparisonRow {
            v: a.value,
            f_tla: ft,
            f_osc: fo,
            ratio: fo.value / ft.value,
        });
    }
    let tla_forces: Vec<f64> = rows.iter().map(|r| r.f_tla.value).collect();
    let osc_forces: Vec<f64> = rows.iter().map(|r| r.f_osc.value).collect();
    Ok(Comparison {
        tla_fit: fit_exponent(grid, &tla_forces)?,
        osc_fit: fit_exponent(grid, &osc_forces)?,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = log_grid(1e-3, 1e-2, 8);
        assert_eq!(g.len(), 8);
        assert!((g[0] - 1e-3).abs() < 1e-18);
        assert_eq!(g[7], 1e-2);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(linear_grid(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn synthetic_cubic() {
        let g = log_grid(1e-3, 1e-2, 8);
        let f: Vec<f64> = g.iter().map(|v| -2.5 * v * v * v).collect();
        let fit = fit_exponent(&g, &f).unwrap();
        assert!((fit.exponent - 3.0).abs() < 1e-10);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!((fit.prefactor_log - 2.5f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn synthetic_powers() {
        let g = log_grid(0.1, 7.0, 11);
        for n in [1, 2, 3] {
            let f: Vec<f64> = g.iter().map(|v| 0.3 * v.powi(n)).collect();
            let fit = fit_exponent(&g, &f).unwrap();
            assert!((fit.exponent - n as f64).abs() < 1e-8);
            assert!(fit.stderr >= 0.0 && fit.stderr < 1e-8);
        }
    }

    #[test]
    fn fit_rejections() {
        let g = log_grid(1e-3, 1e-2, 8);
        assert!(fit_exponent(&g[..4], &[1.0; 4]).is_err());
        let mut f = vec![-1.0; 8];
        f[3] = 1.0;
        assert!(fit_exponent(&g, &f).is_err());
        f[3] = 0.0;
        assert!(fit_exponent(&g, &f).is_err());
        let mut bad = g.clone();
        bad[0] = 0.0;
        assert!(fit_exponent(&bad, &[1.0; 8]).is_err());
    }

    #[test]
    fn window_sensitivity_flags_a_crossover() {
        // v + v³/c crosses from slope 1 to slope 3 inside the window.
        let g = log_grid(0.01, 100.0, 10);
        let f: Vec<f64> = g.iter().map(|v| v + v * v * v).collect();
        assert!(fit_report(&g, &f).unwrap().window_sensitive);
        let f: Vec<f64> = g.iter().map(|v| 2.0 * v).collect();
        assert!(!fit_report(&g, &f).unwrap().window_sensitive);
    }

    #[test]
    fn degenerate_grid_rejected() {
        let spec = SweepSpec::velocity(Scenario::default(), vec![0.0; 5]);
        assert!(matches!(
            run_sweep(&spec, &QuadratureSpec::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn single_point_comparison_rejected() {
        assert!(matches!(
            compare_models(&Scenario::default(), &[0.01], &QuadratureSpec::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn components_parse() {
        let c: Components = "total, f0".parse().unwrap();
        assert!(c.total && c.f0 && !c.fs);
        assert_eq!(c.to_string(), "f0,total");
        assert!("".parse::<Components>().is_err());
        assert!("f1".parse::<Components>().is_err());
    }
}
