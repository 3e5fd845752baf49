//! Drives the batch runner from an in-memory configuration.

use quantum_friction::cli::{parse_config, run};

const CONFIG: &str = "
# oscillator velocity sweep
mode = sweep
model = oscillator
sweep_min = 1e-3
sweep_max = 1e-2
sweep_points = 8
sweep_components = total
";

fn main() -> quantum_friction::Result<()> {
    let dir = std::env::temp_dir().join("qfric-example");
    std::fs::create_dir_all(&dir).map_err(|e| quantum_friction::Error::Io {
        path: dir.display().to_string(),
        reason: e.to_string(),
    })?;
    let mut cfg = parse_config(CONFIG)?;
    cfg.output_path = dir.join("sweep.csv");
    let summary = run(&cfg)?;
    print!("{}", summary.text);
    println!("csv: {}", summary.output_path.display());
    println!("effective config: {}", summary.sidecar_path.display());
    Ok(())
}
