//! Friction on a ground-state two-level atom at the default parameters.

use quantum_friction::forces::{evaluate, tla_force_ground, Scenario};
use quantum_friction::quadrature::QuadratureSpec;

fn main() -> quantum_friction::Result<()> {
    let s = Scenario::default();
    let q = QuadratureSpec::default();
    let r = evaluate(&s, &q)?;
    println!("v = {}, z = {}", s.v(), s.z());
    println!("free-field part  {:+.10e}", r.f0.value);
    println!("source part      {:+.10e}", r.fs.value);
    println!("total            {:+.10e} +- {:.1e} {}", r.total.value, r.err_estimate(), r.unit);
    let g = tla_force_ground(&s, &q)?;
    println!("ground kernel    {:+.10e}", g.value);
    Ok(())
}
