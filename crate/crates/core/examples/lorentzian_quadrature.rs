//! Integrates a very narrow Lorentzian against a smooth weight.

use quantum_friction::atom::lorentzian;
use quantum_friction::quadrature::{integrate_semi_infinite, oracle_integrate, PeakedIntegrand, QuadratureSpec};

fn main() -> quantum_friction::Result<()> {
    for gamma in [1e-2, 1e-4, 1e-6] {
        let f = PeakedIntegrand::new(move |x: f64| lorentzian(x - 1.0, gamma) * (-x).exp())
            .with_peak(1.0, 0.5 * gamma);
        let r = integrate_semi_infinite(&f, 1.0, &QuadratureSpec::default())?;
        let o = oracle_integrate(&f, 0.0, 60.0, 1_000_000);
        println!(
            "gamma {gamma:.0e}: {:.12} +- {:.1e} (dense grid {:.12})",
            r.value, r.err_estimate, o
        );
    }
    Ok(())
}
