use quantum_friction::atom::lorentzian;
use quantum_friction::forces::{ForceOp, Scenario};
use quantum_friction::quadrature::{
    integrate_interval, integrate_semi_infinite, oracle_integrate, PeakedIntegrand, QuadratureSpec,
};

/// Trapezoid sum of `∫₀^∞ L(x−1) e^{−x} dx` after `x = 1 + (γ/2) tan u`,
/// which turns the Lorentzian factor into 1.
fn tangent_reference(gamma: f64, n: usize) -> f64 {
    let hw = 0.5 * gamma;
    let ua = (-1.0f64 / hw).atan();
    let ub = std::f64::consts::FRAC_PI_2;
    let h = (ub - ua) / (n - 1) as f64;
    let f = |u: f64| (-(1.0 + hw * u.tan())).exp();
    let mut sum = 0.5 * f(ua); // f(ub) = 0
    let mut comp = 0.0;
    for i in 1..n - 1 {
        let y = f(ua + i as f64 * h) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum * h
}

#[test]
fn lorentzian_times_exponential_matches_tangent_grid() {
    let g = 1e-3;
    let reference = tangent_reference(g, 10_000_000);
    let f = PeakedIntegrand::new(|x: f64| lorentzian(x - 1.0, g) * (-x).exp()).with_peak(1.0, g / 2.0);
    let r = integrate_semi_infinite(&f, 1.0, &QuadratureSpec::default()).unwrap();
    assert!(
        ((r.value - reference) / reference).abs() < 1e-6,
        "{} vs {reference}",
        r.value
    );
}

#[test]
fn refinement_never_hurts() {
    let g: f64 = 1e-4;
    let battery: Vec<(Box<dyn Fn(f64) -> f64>, Option<(f64, f64)>, f64, f64, f64)> = vec![
        (Box::new(move |x| lorentzian(x, g)), Some((0.0, g / 2.0)), -1.0, 1.0, 2.0 * (2.0 / g).atan()),
        (Box::new(|x: f64| (-x).exp()), None, 0.0, 40.0, 1.0 - (-40f64).exp()),
        (Box::new(|x: f64| x.sin().powi(2)), None, 0.0, 10.0, 5.0 - 20f64.sin() / 4.0),
    ];
    for (f, peak, a, b, exact) in &battery {
        let mut prev = f64::INFINITY;
        for tol in [1e-3, 5e-4, 2.5e-4, 1.25e-4, 6.25e-5] {
            let mut pi = PeakedIntegrand::new(|x| f(x));
            if let Some((c, hw)) = peak {
                pi = pi.with_peak(*c, *hw);
            }
            let q = QuadratureSpec {
                rel_tol: tol,
                ..QuadratureSpec::default()
            };
            let d = (integrate_interval(&pi, *a, *b, &q).unwrap().value - exact).abs();
            assert!(d <= prev + 4.0 * f64::EPSILON * exact.abs(), "tol {tol}: {d:e} > {prev:e}");
            prev = d;
        }
    }
}

#[test]
fn error_estimates_are_honest() {
    let g: f64 = 2e-4;
    let exact = 2.0 * (2.0 / g).atan();
    let f = PeakedIntegrand::new(|x| lorentzian(x, g)).with_peak(0.0, g / 2.0);
    for tol in [1e-3, 1e-6, 1e-9] {
        let q = QuadratureSpec {
            rel_tol: tol,
            ..QuadratureSpec::default()
        };
        let r = integrate_interval(&f, -1.0, 1.0, &q).unwrap();
        assert!((r.value - exact).abs() <= r.err_estimate.max(1e-15));
    }
}

#[test]
fn oracle_on_a_peaked_integrand() {
    let g = 1e-3;
    let f = PeakedIntegrand::new(|x: f64| lorentzian(x - 0.4, g) * (1.0 + x * x)).with_peak(0.4, g / 2.0);
    let o = oracle_integrate(&f, 0.0, 1.0, 1_000_000);
    let r = integrate_interval(&f, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
    assert!(((o - r.value) / r.value).abs() < 1e-6);
}

#[test]
fn truncation_audit_for_friction_kernels() {
    let s = Scenario::default();
    let q30 = QuadratureSpec::default();
    let q60 = QuadratureSpec {
        k_cut: 60.0,
        ..q30
    };
    for op in ForceOp::ALL {
        let a = op.evaluate(&s, &q30).unwrap().value;
        let b = op.evaluate(&s, &q60).unwrap().value;
        assert!(((a - b) / b).abs() < q30.rel_tol, "{}: {a} vs {b}", op.name());
    }
}

#[test]
fn oracle_resolves_very_narrow_peaks() {
    let g = 1e-6;
    let f = PeakedIntegrand::new(move |x: f64| lorentzian(x - 1.0, g) * (-x).exp()).with_peak(1.0, g / 2.0);
    let o = oracle_integrate(&f, 0.0, 60.0, 1_000_000);
    let r = integrate_semi_infinite(&f, 1.0, &QuadratureSpec::default()).unwrap();
    assert!(((o - r.value) / r.value).abs() < 1e-8, "{o} vs {}", r.value);
}
