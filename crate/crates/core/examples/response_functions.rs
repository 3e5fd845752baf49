//! Tabulates the material and atomic response on a few frequencies.

use quantum_friction::atom::{alpha_imag, AtomParams};
use quantum_friction::material::{permittivity, surface_response, MaterialParams};

fn main() -> quantum_friction::Result<()> {
    let m = MaterialParams::default();
    let a = AtomParams::default();
    println!("surface plasmon at {:.6}", m.surface_plasmon());
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "omega", "Re eps", "Im eps", "Im Delta", "Im alpha");
    for w in [0.25, 0.5, 0.99995, 1.0, 1.2, 1.5, 3.0] {
        let e = permittivity(&m, w);
        let d = surface_response(&m, w)?;
        println!(
            "{w:>8.5} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e}",
            e.re,
            e.im,
            d.im,
            alpha_imag(&a, w)
        );
    }
    Ok(())
}
