//! Compares every force operation against the dense-grid oracle.

use std::time::Instant;

use quantum_friction::forces::{ForceOp, Scenario};
use quantum_friction::oracle::{oracle_force, OracleGrid};
use quantum_friction::quadrature::QuadratureSpec;

fn main() -> quantum_friction::Result<()> {
    let s = Scenario::default();
    let grid = OracleGrid::default();
    println!("oracle grid: {} points", grid.effective_points());
    for op in ForceOp::ALL {
        let a = op.evaluate(&s, &QuadratureSpec::default())?;
        let t = Instant::now();
        let o = oracle_force(op, &s, &grid);
        println!(
            "{:<14} adaptive {:+.9e}  oracle {:+.9e}  rel {:.1e}  ({:.1} s)",
            op.name(),
            a.value,
            o,
            ((a.value - o) / o).abs(),
            t.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
