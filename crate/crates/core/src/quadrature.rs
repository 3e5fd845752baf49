//! Adaptive Gauss–Kronrod quadrature for integrands with narrow, analytically
//! located Lorentzian peaks and step discontinuities, plus an independent
//! dense-grid midpoint oracle.
//!
//! The adaptive engine is global (QUADPACK `qag` style): the panel with the
//! largest error estimate is bisected until the summed estimate meets
//! `max(rel_tol·|I|, abs_tol)`. Before refinement starts, the interval is
//! split at every declared peak center, at `center ± peak_pad·half_width`, and
//! at every declared discontinuity.
//!
//! Nested integrals are supported through [`integrate_nested`]: the evaluator
//! returns its own [`Estimate`] and the inner error estimates are carried into
//! the outer result without driving outer refinement.

use crate::error::{invalid, Error, Result};

/// Tolerances and truncation constants shared by all integrals of a force
/// evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Semi-infinite integrals are split at `k_cut·decay_scale`.
    pub k_cut: f64,
    /// Peak brackets are `center ± peak_pad·half_width`.
    pub peak_pad: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(
        rel_tol: f64,
        abs_tol: f64,
        k_cut: f64,
        peak_pad: f64,
        max_subdivisions: usize,
    ) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            k_cut,
            peak_pad,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(invalid("rel_tol", format!("must lie in (0, 1e-2], got {}", self.rel_tol)));
        }
        if !(self.abs_tol.is_finite() && self.abs_tol >= 0.0) {
            return Err(invalid("abs_tol", format!("must be >= 0, got {}", self.abs_tol)));
        }
        if !(self.k_cut.is_finite() && self.k_cut >= 30.0) {
            return Err(invalid("k_cut", format!("must be >= 30, got {}", self.k_cut)));
        }
        if !(self.peak_pad.is_finite() && self.peak_pad >= 10.0) {
            return Err(invalid("peak_pad", format!("must be >= 10, got {}", self.peak_pad)));
        }
        if self.max_subdivisions < 1 {
            return Err(invalid("max_subdivisions", "must be >= 1"));
        }
        Ok(())
    }

    /// Looser defaults for large sweeps.
    pub fn sweep() -> Self {
        Self {
            rel_tol: 1e-5,
            ..Self::default()
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-7,
            abs_tol: 1e-30,
            k_cut: 30.0,
            peak_pad: 10.0,
            max_subdivisions: 2000,
        }
    }
}

/// A Lorentzian-like feature of the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub center: f64,
    pub half_width: f64,
}

impl Peak {
    pub fn new(center: f64, half_width: f64) -> Self {
        Self { center, half_width }
    }
}

/// Scalar integrand annotated with its peaks and breakpoints.
#[derive(Debug, Clone)]
pub struct PeakedIntegrand<F> {
    pub evaluator: F,
    pub peaks: Vec<Peak>,
    pub discontinuities: Vec<f64>,
}

impl<F: Fn(f64) -> f64> PeakedIntegrand<F> {
    pub fn new(evaluator: F) -> Self {
        Self {
            evaluator,
            peaks: Vec::new(),
            discontinuities: Vec::new(),
        }
    }

    pub fn with_peak(mut self, center: f64, half_width: f64) -> Self {
        self.peaks.push(Peak::new(center, half_width));
        self
    }

    pub fn with_discontinuity(mut self, x: f64) -> Self {
        self.discontinuities.push(x);
        self
    }

    fn check(&self) -> Result<()> {
        check_annotations(&self.peaks, &self.discontinuities)
    }
}

fn check_annotations(peaks: &[Peak], discontinuities: &[f64]) -> Result<()> {
    for p in peaks {
        if !(p.half_width > 0.0 && p.half_width.is_finite() && p.center.is_finite()) {
            return Err(invalid(
                "peaks",
                format!("peak at {} with half width {} is invalid", p.center, p.half_width),
            ));
        }
    }
    if discontinuities.iter().any(|x| !x.is_finite()) {
        return Err(invalid("discontinuities", "breakpoints must be finite"));
    }
    Ok(())
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub value: f64,
    pub err_estimate: f64,
}

impl Estimate {
    pub fn new(value: f64, err_estimate: f64) -> Self {
        Self {
            value,
            err_estimate,
        }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    pub fn scale(self, factor: f64) -> Self {
        Self::new(self.value * factor, self.err_estimate * factor.abs())
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;

    fn add(self, rhs: Estimate) -> Estimate {
        Estimate::new(self.value + rhs.value, self.err_estimate + rhs.err_estimate)
    }
}

impl std::ops::Sub for Estimate {
    type Output = Estimate;

    fn sub(self, rhs: Estimate) -> Estimate {
        Estimate::new(self.value - rhs.value, self.err_estimate + rhs.err_estimate)
    }
}

// 10-point Gauss / 21-point Kronrod abscissae and weights (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// How a panel's abscissa maps onto the integration variable.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Map {
    Identity,
    /// `x = origin/t` on `t ∈ (0, 1]`, for the tail `[origin, ∞)`.
    Reciprocal { origin: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    map: Map,
    value: f64,
    err: f64,
    inner_err: f64,
    frozen: bool,
}

struct Rule {
    value: f64,
    err: f64,
    inner_err: f64,
}

fn gk21<F>(f: &F, a: f64, b: f64, map: Map) -> Result<Rule>
where
    F: Fn(f64) -> Result<Estimate>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> Result<Estimate> {
        match map {
            Map::Identity => f(t),
            Map::Reciprocal { origin } => {
                let jac = origin / (t * t);
                Ok(f(origin / t)?.scale(jac))
            }
        }
    };

    let mut fv1 = [Estimate::default(); 10];
    let mut fv2 = [Estimate::default(); 10];
    let fc = eval(center)?;
    let mut res_g = 0.0;
    let mut res_k = WGK[10] * fc.value;
    let mut res_abs = res_k.abs();
    let mut inner = WGK[10] * fc.err_estimate;
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let (f1, f2) = (eval(center - dx)?, eval(center + dx)?);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        let sum = f1.value + f2.value;
        res_g += WG[j] * sum;
        res_k += WGK[jtw] * sum;
        res_abs += WGK[jtw] * (f1.value.abs() + f2.value.abs());
        inner += WGK[jtw] * (f1.err_estimate + f2.err_estimate);
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let (f1, f2) = (eval(center - dx)?, eval(center + dx)?);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_k += WGK[jtwm1] * (f1.value + f2.value);
        res_abs += WGK[jtwm1] * (f1.value.abs() + f2.value.abs());
        inner += WGK[jtwm1] * (f1.err_estimate + f2.err_estimate);
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc.value - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j].value - mean).abs() + (fv2[j].value - mean).abs());
    }
    let hl = half.abs();
    let value = res_k * half;
    res_abs *= hl;
    res_asc *= hl;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() || !err.is_finite() {
        return Err(Error::Precondition(format!(
            "integrand is not finite on [{a}, {b}]"
        )));
    }
    Ok(Rule {
        value,
        err,
        inner_err: inner * hl,
    })
}

fn sorted_unique(mut points: Vec<f64>) -> Vec<f64> {
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// Breakpoints of `[a, b]`: the endpoints plus every peak center, peak
/// bracket and discontinuity lying strictly inside.
fn breakpoints(a: f64, b: f64, peaks: &[Peak], discontinuities: &[f64], pad: f64) -> Vec<f64> {
    let mut pts = vec![a, b];
    for p in peaks {
        let w = pad * p.half_width;
        pts.extend([p.center - w, p.center, p.center + w]);
    }
    pts.extend_from_slice(discontinuities);
    sorted_unique(pts.into_iter().filter(|&x| x >= a && x <= b).collect())
}

fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn adaptive<F>(f: &F, segments: &[(f64, f64, Map)], spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Result<Estimate>,
{
    let mut panels = Vec::with_capacity(segments.len() * 4);
    for &(a, b, map) in segments {
        if b > a {
            let r = gk21(f, a, b, map)?;
            panels.push(Panel {
                a,
                b,
                map,
                value: r.value,
                err: r.err,
                inner_err: r.inner_err,
                frozen: false,
            });
        }
    }
    loop {
        let total = neumaier_sum(panels.iter().map(|p| p.value));
        let err: f64 = panels.iter().map(|p| p.err).sum();
        let target = (spec.rel_tol * total.abs()).max(spec.abs_tol);
        if err <= target {
            let inner: f64 = panels.iter().map(|p| p.inner_err).sum();
            return Ok(Estimate::new(total, err + inner));
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.frozen)
            .max_by(|(_, x), (_, y)| x.err.total_cmp(&y.err))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            // Every remaining panel sits at the resolution limit of f64.
            let inner: f64 = panels.iter().map(|p| p.inner_err).sum();
            log::debug!("quadrature roundoff-limited: err {err:e} > target {target:e}");
            return Ok(Estimate::new(total, err + inner));
        };
        if panels.len() >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                subdivisions: panels.len(),
                value: total,
                err_estimate: err,
                target,
            });
        }
        let p = panels[i];
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) || (p.b - p.a) <= 64.0 * f64::EPSILON * p.a.abs().max(p.b.abs())
        {
            panels[i].frozen = true;
            continue;
        }
        let left = gk21(f, p.a, mid, p.map)?;
        let right = gk21(f, mid, p.b, p.map)?;
        panels[i] = Panel {
            b: mid,
            value: left.value,
            err: left.err,
            inner_err: left.inner_err,
            ..p
        };
        panels.insert(
            i + 1,
            Panel {
                a: mid,
                value: right.value,
                err: right.err,
                inner_err: right.inner_err,
                ..p
            },
        );
    }
}

/// Adaptive integral over the finite interval `[a, b]` of an evaluator that
/// reports its own error estimate (used for nested integrals).
pub fn integrate_nested<F>(
    f: F,
    peaks: &[Peak],
    discontinuities: &[f64],
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    F: Fn(f64) -> Result<Estimate>,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Precondition(format!(
            "integration interval [{a}, {b}] must be finite with a < b"
        )));
    }
    check_annotations(peaks, discontinuities)?;
    let pts = breakpoints(a, b, peaks, discontinuities, spec.peak_pad);
    let segments: Vec<_> = pts.windows(2).map(|w| (w[0], w[1], Map::Identity)).collect();
    adaptive(&f, &segments, spec)
}

/// Adaptive integral over `[0, ∞)` of an evaluator that reports its own error
/// estimate.
///
/// The range is split at `T = max(k_cut·decay_scale, furthest peak bracket,
/// furthest breakpoint)`. `[0, T]` is integrated with the usual pre-splitting;
/// the tail `[T, ∞)` is mapped onto `t ∈ (0, 1]` by `x = T/t` and integrated
/// under the same global error budget, so the tail contributes its own error
/// estimate instead of a truncation bound.
pub fn integrate_semi_infinite_nested<F>(
    f: F,
    peaks: &[Peak],
    discontinuities: &[f64],
    decay_scale: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    F: Fn(f64) -> Result<Estimate>,
{
    if !(decay_scale.is_finite() && decay_scale > 0.0) {
        return Err(Error::Precondition(format!(
            "decay_scale must be finite and > 0, got {decay_scale}"
        )));
    }
    check_annotations(peaks, discontinuities)?;
    let mut split = spec.k_cut * decay_scale;
    for p in peaks {
        split = split.max(p.center + spec.peak_pad * p.half_width);
    }
    for &x in discontinuities {
        split = split.max(x);
    }
    let pts = breakpoints(0.0, split, peaks, discontinuities, spec.peak_pad);
    let mut segments: Vec<_> = pts.windows(2).map(|w| (w[0], w[1], Map::Identity)).collect();
    segments.push((0.0, 1.0, Map::Reciprocal { origin: split }));
    adaptive(&f, &segments, spec)
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: &PeakedIntegrand<F>,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    f.check()?;
    integrate_nested(
        |x| Ok(Estimate::exact((f.evaluator)(x))),
        &f.peaks,
        &f.discontinuities,
        a,
        b,
        spec,
    )
}

/// Adaptive integral of `f` over `[0, ∞)`; see [`integrate_semi_infinite_nested`].
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: &PeakedIntegrand<F>,
    decay_scale: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    f.check()?;
    integrate_semi_infinite_nested(
        |x| Ok(Estimate::exact((f.evaluator)(x))),
        &f.peaks,
        &f.discontinuities,
        decay_scale,
        spec,
    )
}

/// Bracket width, in half-widths, used by [`oracle_integrate`] for the
/// tangent-substituted panels.
pub const ORACLE_PEAK_PAD: f64 = 10.0;

/// Composite midpoint reference value on about `n` points.
///
/// `[a, b]` is cut at every breakpoint, peak center, peak bracket
/// `center ± 10·half_width` and at dyadic multiples of the bracket. Each
/// panel gets the same number of uniformly spaced nodes; inside a peak bracket the nodes are uniform in `u` with
/// `x = center + half_width·tan(u)`, which flattens the Lorentzian. This is a
/// deliberately simple scheme, independent of the adaptive engine, meant for
/// cross-checks.
pub fn oracle_integrate<F: Fn(f64) -> f64>(f: &PeakedIntegrand<F>, a: f64, b: f64, n: usize) -> f64 {
    // Rings at 2^j bracket widths keep the Lorentzian tails resolved.
    let mut cuts = f.discontinuities.clone();
    for p in &f.peaks {
        let mut r = 2.0 * ORACLE_PEAK_PAD * p.half_width;
        while r < b - a {
            cuts.extend([p.center - r, p.center + r].into_iter().filter(|x| *x > a && *x < b));
            r *= 2.0;
        }
    }
    let pts = breakpoints(a, b, &f.peaks, &cuts, ORACLE_PEAK_PAD);
    let panels = pts.len().saturating_sub(1).max(1);
    let m = (n / panels).max(2);
    let mut acc = Vec::with_capacity(panels);
    for w in pts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = 0.5 * (lo + hi);
        let peak = f
            .peaks
            .iter()
            .filter(|p| (mid - p.center).abs() <= ORACLE_PEAK_PAD * p.half_width)
            .min_by(|x, y| x.half_width.total_cmp(&y.half_width));
        acc.push(match peak {
            Some(p) => {
                let (ua, ub) = (
                    ((lo - p.center) / p.half_width).atan(),
                    ((hi - p.center) / p.half_width).atan(),
                );
                midpoint(
                    |u| {
                        let t = u.tan();
                        (f.evaluator)(p.center + p.half_width * t) * p.half_width * (1.0 + t * t)
                    },
                    ua,
                    ub,
                    m,
                )
            }
            None => midpoint(&f.evaluator, lo, hi, m),
        });
    }
    neumaier_sum(acc)
}

/// Composite midpoint rule. Panel ends are never sampled, so a jump placed
/// on a breakpoint contributes its one-sided values only.
fn midpoint(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    h * neumaier_sum((0..m).map(|i| f(a + (i as f64 + 0.5) * h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::lorentzian;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 0.0, 30.0, 10.0, 100).is_err());
        assert!(QuadratureSpec::new(0.1, 0.0, 30.0, 10.0, 100).is_err());
        assert!(QuadratureSpec::new(1e-6, 0.0, 20.0, 10.0, 100).is_err());
        assert!(QuadratureSpec::new(1e-6, 0.0, 30.0, 5.0, 100).is_err());
        assert!(QuadratureSpec::new(1e-6, 0.0, 30.0, 10.0, 0).is_err());
        assert!(QuadratureSpec::new(1e-2, 0.0, 30.0, 10.0, 1).is_ok());
    }

    #[test]
    fn narrow_lorentzian() {
        let g = 1e-4;
        let f = PeakedIntegrand::new(|x| lorentzian(x, g)).with_peak(0.0, g / 2.0);
        let r = integrate_interval(&f, -1.0, 1.0, &spec()).unwrap();
        let exact = 2.0 * (2.0 / g).atan();
        assert!((r.value - exact).abs() <= 1e-7 * exact);
        assert!((exact - (std::f64::consts::PI - 1e-4)).abs() < 1e-10);
        assert!(r.err_estimate <= 1e-7 * exact);
    }

    #[test]
    fn exponential_interval() {
        let f = PeakedIntegrand::new(|x: f64| (-x).exp());
        let r = integrate_interval(&f, 0.0, 40.0, &spec()).unwrap();
        let exact = 1.0 - (-40f64).exp();
        assert!((r.value - exact).abs() <= 1e-7 * exact);
    }

    #[test]
    fn step_with_breakpoint() {
        let f = PeakedIntegrand::new(|x| if x < 0.5 { 1.0 } else { 0.0 }).with_discontinuity(0.5);
        let r = integrate_interval(&f, 0.0, 1.0, &spec()).unwrap();
        assert!((r.value - 0.5).abs() <= 1e-7 * 0.5);
    }

    #[test]
    fn semi_infinite_moments() {
        let f = PeakedIntegrand::new(|x: f64| (-2.0 * x).exp());
        let r = integrate_semi_infinite(&f, 0.5, &spec()).unwrap();
        assert!((r.value - 0.5).abs() <= 1e-7 * 0.5);
        let f = PeakedIntegrand::new(|x: f64| x * (-2.0 * x).exp());
        let r = integrate_semi_infinite(&f, 0.5, &spec()).unwrap();
        assert!((r.value - 0.25).abs() <= 1e-7 * 0.25);
    }

    #[test]
    fn semi_infinite_power_tail() {
        // ∫₀^∞ dx/(1+x)³ = 1/2
        let f = PeakedIntegrand::new(|x: f64| (1.0 + x).powi(-3));
        let r = integrate_semi_infinite(&f, 1.0, &spec()).unwrap();
        assert!((r.value - 0.5).abs() <= 1e-7 * 0.5, "{r:?}");
    }

    #[test]
    fn rejects_bad_interval() {
        let f = PeakedIntegrand::new(|x| x);
        assert!(integrate_interval(&f, 1.0, 0.0, &spec()).is_err());
        assert!(integrate_interval(&f, 0.0, f64::INFINITY, &spec()).is_err());
        let f = PeakedIntegrand::new(|x| x).with_peak(0.5, 0.0);
        assert!(integrate_interval(&f, 0.0, 1.0, &spec()).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let q = QuadratureSpec {
            max_subdivisions: 3,
            ..spec()
        };
        let f = PeakedIntegrand::new(|x: f64| x.abs().sqrt().recip().min(1e8));
        match integrate_interval(&f, -1.0, 1.0, &q) {
            Err(Error::NonConvergence { .. }) => {}
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn zero_integrand_converges_immediately() {
        let f = PeakedIntegrand::new(|_| 0.0);
        let r = integrate_interval(&f, 0.0, 1.0, &spec()).unwrap();
        assert_eq!(r, Estimate::exact(0.0));
    }

    #[test]
    fn oracle_exact_cases() {
        let one = PeakedIntegrand::new(|_| 1.0);
        assert!((oracle_integrate(&one, 0.0, 1.0, 1000) - 1.0).abs() < 1e-14);
        let lin = PeakedIntegrand::new(|x| x);
        assert!((oracle_integrate(&lin, 0.0, 1.0, 1000) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn oracle_agrees_with_adaptive() {
        let q = spec();
        let g = 1e-4;
        let lor = PeakedIntegrand::new(|x| lorentzian(x, g)).with_peak(0.0, g / 2.0);
        let exp = PeakedIntegrand::new(|x: f64| (-x).exp());
        let step = PeakedIntegrand::new(|x| if x < 0.5 { 1.0 } else { 0.0 }).with_discontinuity(0.5);
        let cases = [
            (oracle_integrate(&lor, -1.0, 1.0, 1_000_000), integrate_interval(&lor, -1.0, 1.0, &q)),
            (oracle_integrate(&exp, 0.0, 40.0, 1_000_000), integrate_interval(&exp, 0.0, 40.0, &q)),
            (oracle_integrate(&step, 0.0, 1.0, 1_000_000), integrate_interval(&step, 0.0, 1.0, &q)),
        ];
        for (oracle, adaptive) in cases {
            let v = adaptive.unwrap().value;
            assert!((oracle - v).abs() <= 10.0 * q.rel_tol * v.abs(), "{oracle} vs {v}");
        }
    }

    #[test]
    fn deterministic() {
        let g = 3e-4;
        let f = PeakedIntegrand::new(|x: f64| lorentzian(x - 1.0, g) * (-x).exp())
            .with_peak(1.0, g / 2.0);
        let a = integrate_semi_infinite(&f, 1.0, &spec()).unwrap();
        let b = integrate_semi_infinite(&f, 1.0, &spec()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.err_estimate.to_bits(), b.err_estimate.to_bits());
    }

    #[test]
    fn nested_errors_propagate() {
        // ∫₀¹ dy ∫₀¹ dx (x + y) = 1, with a fake inner error of 1e-9 per sample.
        let q = spec();
        let r = integrate_nested(
            |y| {
                let inner = integrate_interval(&PeakedIntegrand::new(|x| x + y), 0.0, 1.0, &q)?;
                Ok(Estimate::new(inner.value, inner.err_estimate + 1e-9))
            },
            &[],
            &[],
            0.0,
            1.0,
            &q,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.err_estimate >= 1e-9 * 0.999);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn linearity(
                c1 in -0.8f64..0.8, c2 in -0.8f64..0.8,
                lg1 in -5.0f64..-2.0, lg2 in -5.0f64..-2.0,
                a in -3.0f64..3.0, b in -3.0f64..3.0,
            ) {
                let q = QuadratureSpec::default();
                let (g1, g2) = (10f64.powf(lg1), 10f64.powf(lg2));
                let f = PeakedIntegrand::new(move |x| lorentzian(x - c1, g1)).with_peak(c1, g1 / 2.0);
                let g = PeakedIntegrand::new(move |x| lorentzian(x - c2, g2)).with_peak(c2, g2 / 2.0);
                let fg = PeakedIntegrand::new(move |x| a * lorentzian(x - c1, g1) + b * lorentzian(x - c2, g2))
                    .with_peak(c1, g1 / 2.0)
                    .with_peak(c2, g2 / 2.0);
                let rf = integrate_interval(&f, -1.0, 1.0, &q).unwrap();
                let rg = integrate_interval(&g, -1.0, 1.0, &q).unwrap();
                let rfg = integrate_interval(&fg, -1.0, 1.0, &q).unwrap();
                let combined = a.abs() * rf.err_estimate + b.abs() * rg.err_estimate + rfg.err_estimate;
                let diff = (rfg.value - (a * rf.value + b * rg.value)).abs();
                prop_assert!(diff <= 2.0 * combined + 1e-14, "diff {diff:e} combined {combined:e}");
            }
        }
    }
}
