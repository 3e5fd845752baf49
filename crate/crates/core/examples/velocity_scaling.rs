//! Linear versus cubic velocity dependence of the two atom models.

use quantum_friction::analysis::{compare_models, log_grid, FIT_POINTS, FIT_WINDOW};
use quantum_friction::forces::Scenario;
use quantum_friction::quadrature::QuadratureSpec;

fn main() -> quantum_friction::Result<()> {
    let grid = log_grid(FIT_WINDOW.0, FIT_WINDOW.1, FIT_POINTS);
    let c = compare_models(&Scenario::default(), &grid, &QuadratureSpec::default())?;
    println!("{:>10} {:>14} {:>14} {:>12}", "v", "two-level", "oscillator", "ratio");
    for r in &c.rows {
        println!("{:>10.3e} {:>14.6e} {:>14.6e} {:>12.4e}", r.v, r.f_tla.value, r.f_osc.value, r.ratio);
    }
    println!("two-level exponent  {:.5} +- {:.1e}", c.tla_fit.exponent, c.tla_fit.stderr);
    println!("oscillator exponent {:.5} +- {:.1e}", c.osc_fit.exponent, c.osc_fit.stderr);
    Ok(())
}
