//! The oscillator's free and source parts cancel down to the stepped force.

use quantum_friction::forces::{osc_force_free, osc_force_source, osc_force_stepped, Model, Scenario};
use quantum_friction::quadrature::QuadratureSpec;

fn main() -> quantum_friction::Result<()> {
    let q = QuadratureSpec::default();
    let base = Scenario::default().with_model(Model::Oscillator);
    for v in [0.005, 0.01, 0.05] {
        let s = base.with_v(v)?;
        let f0 = osc_force_free(&s, &q)?;
        let fs = osc_force_source(&s, &q)?;
        let stepped = osc_force_stepped(&s, &q)?;
        let sum = f0 + fs;
        println!(
            "v = {v}: f0 {:+.6e}, fs {:+.6e}, sum {:+.6e}, stepped {:+.6e} (+- {:.1e})",
            f0.value,
            fs.value,
            sum.value,
            stepped.value,
            sum.err_estimate + stepped.err_estimate
        );
    }
    Ok(())
}
