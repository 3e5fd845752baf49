//! Config-driven batch front end: parsing, the four run modes, and CSV output.
//!
//! # Configuration format
//!
//! One `key = value` pair per line. `#` starts a comment (anywhere on a line
//! outside a quoted value). Blank lines are ignored. String values may be
//! quoted with `"`. Keys are case-sensitive; unknown or repeated keys are
//! errors. See the README for the full key table.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::analysis::{
    self, compare_models, log_grid, linear_grid, Components, FitReport, GammaLaw, SweepSpec,
    SweepVariable, FIT_POINTS, FIT_WINDOW,
};
use crate::atom::AtomParams;
use crate::error::{Error, Result};
use crate::forces::{self, Model, Scenario};
use crate::material::MaterialParams;
use crate::oracle::OracleGrid;
use crate::quadrature::QuadratureSpec;

pub mod selftest;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Point,
    Sweep,
    Compare,
    Selftest,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Point => "point",
            Mode::Sweep => "sweep",
            Mode::Compare => "compare",
            Mode::Selftest => "selftest",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "point" => Ok(Mode::Point),
            "sweep" => Ok(Mode::Sweep),
            "compare" => Ok(Mode::Compare),
            "selftest" => Ok(Mode::Selftest),
            other => Err(format!(
                "unknown mode `{other}` (expected point, sweep, compare or selftest)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

impl std::str::FromStr for Spacing {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "log" => Ok(Spacing::Log),
            "linear" => Ok(Spacing::Linear),
            other => Err(format!("unknown spacing `{other}` (expected log or linear)")),
        }
    }
}

impl std::fmt::Display for Spacing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Spacing::Log => "log",
            Spacing::Linear => "linear",
        })
    }
}

/// Sweep section of a [`RunConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub variable: SweepVariable,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub components: Components,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            variable: SweepVariable::Velocity,
            min: FIT_WINDOW.0,
            max: FIT_WINDOW.1,
            points: FIT_POINTS,
            spacing: Spacing::Log,
            components: Components::ALL,
        }
    }
}

impl SweepConfig {
    pub fn grid(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Log => log_grid(self.min, self.max, self.points),
            Spacing::Linear => linear_grid(self.min, self.max, self.points),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    /// When set, `gamma` is the linewidth at this distance and is rescaled by
    /// the `z⁻³` law at every evaluated distance.
    pub gamma_z_ref: Option<f64>,
    pub quadrature: QuadratureSpec,
    pub sweep: Option<SweepConfig>,
    pub output_path: PathBuf,
    pub mode: Mode,
}

pub const DEFAULT_OUTPUT: &str = "qfric_out.csv";

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::default(),
            gamma_z_ref: None,
            quadrature: QuadratureSpec::default(),
            sweep: None,
            output_path: PathBuf::from(DEFAULT_OUTPUT),
            mode: Mode::Point,
        }
    }
}

const KEYS: &[&str] = &[
    "mode",
    "model",
    "d2",
    "omega_a",
    "gamma",
    "gamma_z_ref",
    "p_lower",
    "p_upper",
    "omega_p",
    "omega_0",
    "gamma_big",
    "z",
    "v",
    "rel_tol",
    "abs_tol",
    "k_cut",
    "peak_pad",
    "max_subdivisions",
    "sweep_variable",
    "sweep_min",
    "sweep_max",
    "sweep_points",
    "sweep_spacing",
    "sweep_components",
    "output",
];

const SWEEP_KEYS: &[&str] = &[
    "sweep_variable",
    "sweep_min",
    "sweep_max",
    "sweep_points",
    "sweep_spacing",
    "sweep_components",
];

struct Entry {
    line: usize,
    value: String,
}

struct Document {
    entries: Vec<(&'static str, Entry)>,
}

impl Document {
    fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(&'static str, Entry)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = strip_comment(raw).trim();
            if content.is_empty() {
                continue;
            }
            let Some((k, v)) = content.split_once('=') else {
                return Err(config_err(line, content, "expected `key = value`"));
            };
            let (k, v) = (k.trim(), v.trim());
            let Some(&key) = KEYS.iter().find(|&&known| known == k) else {
                return Err(config_err(line, k, "unknown key"));
            };
            if let Some((_, prev)) = entries.iter().find(|(n, _)| *n == key) {
                return Err(config_err(
                    line,
                    key,
                    format!("repeated key (first set on line {})", prev.line),
                ));
            }
            let value = unquote(v).map_err(|r| config_err(line, key, r))?;
            if value.is_empty() {
                return Err(config_err(line, key, "empty value"));
            }
            entries.push((key, Entry { line, value }));
        }
        Ok(Self { entries })
    }

    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|(k, _)| *k == key).map(|(_, e)| e)
    }

    fn line_of(&self, key: &str) -> usize {
        self.get(key).map_or(0, |e| e.line)
    }

    fn parsed<T>(&self, key: &str, default: T) -> Result<T>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(default),
            Some(e) => e
                .value
                .parse()
                .map_err(|err: T::Err| config_err(e.line, key, format!("`{}`: {err}", e.value))),
        }
    }

    fn optional<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse()
                .map(Some)
                .map_err(|err: T::Err| config_err(e.line, key, format!("`{}`: {err}", e.value))),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

fn unquote(v: &str) -> std::result::Result<String, String> {
    match (v.starts_with('"'), v.ends_with('"') && v.len() >= 2) {
        (true, true) => Ok(v[1..v.len() - 1].to_string()),
        (true, false) => Err("unterminated quoted value".into()),
        (false, _) if v.contains('"') => Err("stray quote in value".into()),
        _ => Ok(v.to_string()),
    }
}

fn config_err(line: usize, key: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        line,
        key: key.to_string(),
        reason: reason.into(),
    }
}

/// Parses and validates a configuration document. Absent keys take the
/// default scenario values.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let doc = Document::parse(text)?;
    // Validation failures from the domain constructors name their parameter,
    // which is also the config key; attach that key's line.
    let locate = |e: Error| match e {
        Error::InvalidParameter { name, reason } => config_err(doc.line_of(name), name, reason),
        other => other,
    };
    let defaults = RunConfig::default();
    let atom_d = AtomParams::default();
    let mat_d = MaterialParams::default();
    let scen_d = Scenario::default();
    let q_d = QuadratureSpec::default();

    let mode: Mode = doc.parsed("mode", defaults.mode)?;
    let model: Model = doc.parsed("model", scen_d.model)?;

    let p_lower: Option<f64> = doc.optional("p_lower")?;
    let p_upper: Option<f64> = doc.optional("p_upper")?;
    let (p_lower, p_upper) = match (p_lower, p_upper) {
        (Some(l), Some(u)) => (l, u),
        (Some(l), None) => (l, 1.0 - l),
        (None, Some(u)) => (1.0 - u, u),
        (None, None) => (atom_d.p_lower(), atom_d.p_upper()),
    };
    let gamma_z_ref: Option<f64> = doc.optional("gamma_z_ref")?;
    if let Some(zr) = gamma_z_ref {
        if !(zr.is_finite() && zr > 0.0) {
            return Err(config_err(doc.line_of("gamma_z_ref"), "gamma_z_ref", "must be > 0"));
        }
    }
    let atom = AtomParams::new(
        doc.parsed("d2", atom_d.d2())?,
        doc.parsed("omega_a", atom_d.omega_a())?,
        doc.parsed("gamma", atom_d.gamma())?,
        p_lower,
        p_upper,
    )
    .map_err(locate)?;
    let material = MaterialParams::new(
        doc.parsed("omega_p", mat_d.omega_p())?,
        doc.parsed("omega_0", mat_d.omega_0())?,
        doc.parsed("gamma_big", mat_d.gamma_big())?,
    )
    .map_err(locate)?;
    let scenario = Scenario::new(
        atom,
        material,
        doc.parsed("z", scen_d.z())?,
        doc.parsed("v", scen_d.v())?,
        model,
    )
    .map_err(locate)?;
    let quadrature = QuadratureSpec::new(
        doc.parsed("rel_tol", q_d.rel_tol)?,
        doc.parsed("abs_tol", q_d.abs_tol)?,
        doc.parsed("k_cut", q_d.k_cut)?,
        doc.parsed("peak_pad", q_d.peak_pad)?,
        doc.parsed("max_subdivisions", q_d.max_subdivisions)?,
    )
    .map_err(locate)?;

    let wants_sweep = matches!(mode, Mode::Sweep | Mode::Compare)
        || SWEEP_KEYS.iter().any(|k| doc.get(k).is_some());
    let sweep = if wants_sweep {
        let d = SweepConfig::default();
        let sc = SweepConfig {
            variable: doc.parsed("sweep_variable", d.variable)?,
            min: doc.parsed("sweep_min", d.min)?,
            max: doc.parsed("sweep_max", d.max)?,
            points: doc.parsed("sweep_points", d.points)?,
            spacing: doc.parsed("sweep_spacing", d.spacing)?,
            components: doc.parsed("sweep_components", d.components)?,
        };
        validate_sweep(&sc, &doc)?;
        Some(sc)
    } else {
        None
    };
    if mode == Mode::Compare {
        if let Some(sc) = &sweep {
            if sc.variable != SweepVariable::Velocity {
                return Err(config_err(
                    doc.line_of("sweep_variable"),
                    "sweep_variable",
                    "compare mode sweeps velocity",
                ));
            }
        }
    }
    let output_path = doc
        .get("output")
        .map_or_else(|| defaults.output_path.clone(), |e| PathBuf::from(&e.value));

    Ok(RunConfig {
        scenario,
        gamma_z_ref,
        quadrature,
        sweep,
        output_path,
        mode,
    })
}

/// Replaces the run mode, filling the default sweep section when the new
/// mode needs one.
pub fn with_mode(mut cfg: RunConfig, mode: Mode) -> Result<RunConfig> {
    if matches!(mode, Mode::Sweep | Mode::Compare) && cfg.sweep.is_none() {
        cfg.sweep = Some(SweepConfig::default());
    }
    if mode == Mode::Compare
        && cfg.sweep.is_some_and(|sc| sc.variable != SweepVariable::Velocity)
    {
        return Err(config_err(0, "mode", "compare mode sweeps velocity"));
    }
    cfg.mode = mode;
    Ok(cfg)
}

fn validate_sweep(sc: &SweepConfig, doc: &Document) -> Result<()> {
    let err = |key: &str, reason: &str| config_err(doc.line_of(key), key, reason);
    if !(sc.min.is_finite() && sc.max.is_finite()) {
        return Err(err("sweep_min", "sweep bounds must be finite"));
    }
    if sc.points < 2 {
        return Err(err("sweep_points", "a sweep needs at least 2 points"));
    }
    if sc.max <= sc.min {
        return Err(err("sweep_max", "sweep_max must exceed sweep_min"));
    }
    if sc.spacing == Spacing::Log && sc.min <= 0.0 {
        return Err(err("sweep_min", "log spacing needs sweep_min > 0"));
    }
    if sc.variable == SweepVariable::Distance && sc.min <= 0.0 {
        return Err(err("sweep_min", "distances must be > 0"));
    }
    Ok(())
}

/// Full-precision float formatting shared by CSV rows and the config echo.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the configuration back in the input format. Parsing the result
/// yields an identical [`RunConfig`].
pub fn effective_config(cfg: &RunConfig) -> String {
    let s = &cfg.scenario;
    let (a, m, q) = (&s.atom, &s.material, &cfg.quadrature);
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    kv("mode", cfg.mode.to_string());
    kv("model", s.model.to_string());
    kv("d2", fmt_float(a.d2()));
    kv("omega_a", fmt_float(a.omega_a()));
    kv("gamma", fmt_float(a.gamma()));
    if let Some(zr) = cfg.gamma_z_ref {
        kv("gamma_z_ref", fmt_float(zr));
    }
    kv("p_lower", fmt_float(a.p_lower()));
    kv("p_upper", fmt_float(a.p_upper()));
    kv("omega_p", fmt_float(m.omega_p()));
    kv("omega_0", fmt_float(m.omega_0()));
    kv("gamma_big", fmt_float(m.gamma_big()));
    kv("z", fmt_float(s.z()));
    kv("v", fmt_float(s.v()));
    kv("rel_tol", fmt_float(q.rel_tol));
    kv("abs_tol", fmt_float(q.abs_tol));
    kv("k_cut", fmt_float(q.k_cut));
    kv("peak_pad", fmt_float(q.peak_pad));
    kv("max_subdivisions", q.max_subdivisions.to_string());
    if let Some(sc) = &cfg.sweep {
        kv("sweep_variable", sc.variable.to_string());
        kv("sweep_min", fmt_float(sc.min));
        kv("sweep_max", fmt_float(sc.max));
        kv("sweep_points", sc.points.to_string());
        kv("sweep_spacing", sc.spacing.to_string());
        kv("sweep_components", sc.components.to_string());
    }
    kv("output", format!("\"{}\"", cfg.output_path.display()));
    out
}

/// Path of the effective-configuration echo written next to `output`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    output.with_extension("effective.cfg")
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub mode: Mode,
    pub output_path: PathBuf,
    pub sidecar_path: PathBuf,
    /// Human-readable report for standard output.
    pub text: String,
    /// The first hard failure: a non-converged point or a failed selftest.
    pub failure: Option<Error>,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        self.failure.as_ref().map_or(0, exit_code)
    }
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence { .. } => 2,
        Error::Precondition(msg) if msg.starts_with(SELFTEST_FAILED) => 3,
        _ => 1,
    }
}

pub(crate) const SELFTEST_FAILED: &str = "selftest failed";

pub const CSV_HEADER: &str = "variable_value,f0,fs,total,err_estimate";

fn csv_cell(e: Option<crate::quadrature::Estimate>) -> String {
    e.map_or_else(|| "nan".to_string(), |e| fmt_float(e.value))
}

fn stamp() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!(
        "# qfric {} unix_time={secs}\n",
        env!("CARGO_PKG_VERSION")
    )
}

fn fit_lines(label: &str, r: &FitReport) -> String {
    format!(
        "# fit: {label} exponent={} stderr={} r_squared={} prefactor_log={}\n\
         # fit: {label} lower_half_exponent={} upper_half_exponent={} window_sensitive={}\n",
        fmt_float(r.full.exponent),
        fmt_float(r.full.stderr),
        fmt_float(r.full.r_squared),
        fmt_float(r.full.prefactor_log),
        fmt_float(r.lower.exponent),
        fmt_float(r.upper.exponent),
        r.window_sensitive,
    )
}

/// Scenario actually evaluated: applies the linewidth law when configured.
pub fn effective_scenario(cfg: &RunConfig) -> Result<Scenario> {
    match cfg.gamma_z_ref {
        Some(z_ref) => GammaLaw {
            gamma_ref: cfg.scenario.atom.gamma(),
            z_ref,
        }
        .apply(&cfg.scenario),
        None => Ok(cfg.scenario),
    }
}

fn gamma_law(cfg: &RunConfig) -> Option<GammaLaw> {
    cfg.gamma_z_ref.map(|z_ref| GammaLaw {
        gamma_ref: cfg.scenario.atom.gamma(),
        z_ref,
    })
}

struct Body {
    csv: String,
    text: String,
    failure: Option<Error>,
}

fn run_point(cfg: &RunConfig) -> Result<Body> {
    let s = effective_scenario(cfg)?;
    let r = forces::evaluate(&s, &cfg.quadrature)?;
    let csv = format!(
        "{CSV_HEADER}\n{},{},{},{},{}\n",
        fmt_float(s.v()),
        fmt_float(r.f0.value),
        fmt_float(r.fs.value),
        fmt_float(r.total.value),
        fmt_float(r.err_estimate()),
    );
    let text = format!(
        "model {} at z = {}, v = {}\n  f0    = {:+.10e}\n  fs    = {:+.10e}\n  total = {:+.10e} ± {:.2e}  [{}]\n",
        s.model,
        s.z(),
        s.v(),
        r.f0.value,
        r.fs.value,
        r.total.value,
        r.err_estimate(),
        r.unit
    );
    Ok(Body {
        csv,
        text,
        failure: None,
    })
}

fn run_sweep_mode(cfg: &RunConfig) -> Result<Body> {
    let sc = cfg.sweep.unwrap_or_default();
    let spec = SweepSpec {
        variable: sc.variable,
        grid: sc.grid(),
        scenario_base: cfg.scenario,
        components: sc.components,
        gamma_law: gamma_law(cfg),
    };
    let res = analysis::run_sweep(&spec, &cfg.quadrature)?;
    let mut csv = format!("{CSV_HEADER}\n");
    let mut text = format!(
        "{} sweep of the {} force over {} points\n",
        sc.variable,
        res.model,
        res.points.len()
    );
    let mut failure = None;
    for p in &res.points {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            fmt_float(p.value),
            csv_cell(p.f0),
            csv_cell(p.fs),
            csv_cell(p.total),
            p.err_estimate().map_or_else(|| "nan".into(), fmt_float),
        );
        if let Some(e) = &p.error {
            let _ = writeln!(csv, "# error: {} at {}: {e}", sc.variable, fmt_float(p.value));
            let _ = writeln!(text, "  point {} failed: {e}", p.value);
            failure.get_or_insert_with(|| e.clone());
        }
    }
    if sc.components.total {
        match res.fit_total() {
            Ok(r) => {
                csv.push_str(&fit_lines("total", &r));
                let _ = writeln!(
                    text,
                    "  exponent = {:.4} ± {:.2e} (r² = {:.8}){}",
                    r.full.exponent,
                    r.full.stderr,
                    r.full.r_squared,
                    if r.window_sensitive {
                        "  [warning: half-window exponents disagree]"
                    } else {
                        ""
                    }
                );
            }
            Err(e) => {
                let _ = writeln!(csv, "# fit: unavailable ({e})");
                let _ = writeln!(text, "  no fit: {e}");
            }
        }
    }
    Ok(Body {
        csv,
        text,
        failure,
    })
}

fn run_compare(cfg: &RunConfig) -> Result<Body> {
    let sc = cfg.sweep.unwrap_or_default();
    let base = effective_scenario(cfg)?;
    let cmp = compare_models(&base, &sc.grid(), &cfg.quadrature)?;
    let mut csv = String::from("v,f_tla,f_osc,ratio\n");
    for r in &cmp.rows {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            fmt_float(r.v),
            fmt_float(r.f_tla.value),
            fmt_float(r.f_osc.value),
            fmt_float(r.ratio)
        );
    }
    for (label, f) in [("tla", &cmp.tla_fit), ("oscillator", &cmp.osc_fit)] {
        let _ = writeln!(
            csv,
            "# fit: {label} exponent={} stderr={} r_squared={} prefactor_log={}",
            fmt_float(f.exponent),
            fmt_float(f.stderr),
            fmt_float(f.r_squared),
            fmt_float(f.prefactor_log)
        );
    }
    let text = format!(
        "two-level atom vs oscillator over v in [{}, {}] ({} points)\n\
         \x20 TLA exponent        = {:.4} ± {:.2e}\n\
         \x20 oscillator exponent = {:.4} ± {:.2e}\n\
         \x20 F_osc/F_TLA: {:.3e} at v = {} -> {:.3e} at v = {}\n",
        sc.min,
        sc.max,
        cmp.rows.len(),
        cmp.tla_fit.exponent,
        cmp.tla_fit.stderr,
        cmp.osc_fit.exponent,
        cmp.osc_fit.stderr,
        cmp.rows[0].ratio,
        cmp.rows[0].v,
        cmp.rows[cmp.rows.len() - 1].ratio,
        cmp.rows[cmp.rows.len() - 1].v,
    );
    Ok(Body {
        csv,
        text,
        failure: None,
    })
}

fn run_selftest(cfg: &RunConfig) -> Result<Body> {
    let s = effective_scenario(cfg)?;
    let checks = selftest::run_battery(&s, &cfg.quadrature, &OracleGrid::default());
    let mut csv = String::from("check,passed,measured,tolerance\n");
    let mut text = String::from("selftest battery\n");
    let mut failed = 0;
    for c in &checks {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            c.name,
            c.passed,
            fmt_float(c.measured),
            fmt_float(c.tolerance)
        );
        let _ = writeln!(
            text,
            "  [{}] {} (measured {:.3e}, tolerance {:.3e}){}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.tolerance,
            c.note.as_deref().map(|n| format!(": {n}")).unwrap_or_default()
        );
        if !c.passed {
            failed += 1;
        }
    }
    let _ = writeln!(text, "{} of {} checks passed", checks.len() - failed, checks.len());
    let failure = (failed > 0).then(|| {
        Error::Precondition(format!("{SELFTEST_FAILED}: {failed} of {} checks", checks.len()))
    });
    Ok(Body {
        csv,
        text,
        failure,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

/// Executes a run and writes the CSV plus the effective-config echo.
///
/// Work that completes but contains failures (non-converged sweep points,
/// failed self-checks) still writes its output and reports the failure in
/// [`RunSummary::failure`]; errors that prevent any output are returned.
pub fn run(cfg: &RunConfig) -> Result<RunSummary> {
    let body = match cfg.mode {
        Mode::Point => run_point(cfg)?,
        Mode::Sweep => run_sweep_mode(cfg)?,
        Mode::Compare => run_compare(cfg)?,
        Mode::Selftest => run_selftest(cfg)?,
    };
    let sidecar = sidecar_path(&cfg.output_path);
    write_file(&cfg.output_path, &format!("{}{}", stamp(), body.csv))?;
    write_file(&sidecar, &effective_config(cfg))?;
    Ok(RunSummary {
        mode: cfg.mode,
        output_path: cfg.output_path.clone(),
        sidecar_path: sidecar,
        text: body.text,
        failure: body.failure,
    })
}
