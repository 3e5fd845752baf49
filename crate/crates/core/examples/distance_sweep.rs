//! Distance dependence, with the atomic linewidth following the surface.

use quantum_friction::analysis::{log_grid, run_sweep, GammaLaw, SweepSpec};
use quantum_friction::forces::Scenario;
use quantum_friction::quadrature::QuadratureSpec;

fn main() -> quantum_friction::Result<()> {
    let law = GammaLaw {
        gamma_ref: 1e-4,
        z_ref: 1.0,
    };
    let spec = SweepSpec::distance(Scenario::default(), log_grid(0.5, 4.0, 7), Some(law));
    let res = run_sweep(&spec, &QuadratureSpec::sweep())?;
    for p in &res.points {
        match (p.total, &p.error) {
            (Some(t), _) => println!("z = {:.4}: {:+.6e}", p.value, t.value),
            (None, Some(e)) => println!("z = {:.4}: failed ({e})", p.value),
            (None, None) => {}
        }
    }
    Ok(())
}
