use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use quantum_friction::cli::{self, Mode};

/// Quantum friction batch runner.
#[derive(Debug, Parser)]
#[command(name = "qfric", version)]
struct Args {
    /// Configuration file (key = value lines).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path; overrides `output` in the config.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run mode; overrides `mode` in the config.
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    verbose: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    env_logger::Builder::new()
        .filter_level(if args.verbose {
            log::LevelFilter::Debug
        } else {
            log::LevelFilter::Warn
        })
        .init();

    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("qfric: cannot read {}: {e}", args.config.display());
            return ExitCode::from(1);
        }
    };
    let mut cfg = match cli::parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qfric: {}: {e}", args.config.display());
            return ExitCode::from(1);
        }
    };
    if let Some(o) = args.output {
        cfg.output_path = o;
    }
    if let Some(m) = args.mode {
        cfg = match cli::with_mode(cfg, m) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("qfric: {e}");
                return ExitCode::from(1);
            }
        };
    }
    match cli::run(&cfg) {
        Ok(summary) => {
            print!("{}", summary.text);
            println!(
                "wrote {} and {}",
                summary.output_path.display(),
                summary.sidecar_path.display()
            );
            if let Some(e) = &summary.failure {
                eprintln!("qfric: {e}");
            }
            ExitCode::from(summary.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("qfric: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
