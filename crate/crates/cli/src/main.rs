use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use specdim_cli::{config::RunConfig, outcome_exit_code, presets, runner};

#[derive(Parser)]
#[command(
    name = "specdim",
    about = "Toeplitz-operator truncations, commutator identity checks, and spectral-dimension estimation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a config file or a bundled preset name.
    Run {
        /// Path to a JSON run config, or one of the bundled preset names.
        config: String,
        /// Output directory for report.json, CSV tables, and figures.
        #[arg(long, default_value = "specdim-out")]
        out: PathBuf,
        /// Override the config's random seed (norm restarts, word sampling).
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; results are identical for any value.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// List the bundled preset names.
    Presets,
}

fn load_config_text(spec: &str) -> Result<String, runner::RunError> {
    let path = PathBuf::from(spec);
    if path.exists() {
        return std::fs::read_to_string(&path)
            .map_err(|e| runner::RunError::Io(format!("{}: {e}", path.display())));
    }
    presets::lookup(spec).map(str::to_string).ok_or_else(|| {
        runner::RunError::Config(format!(
            "`{spec}` is neither a file nor a bundled preset (presets: {})",
            presets::names().join(", ")
        ))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Presets => {
            for name in presets::names() {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            config,
            out,
            seed,
            threads,
        } => {
            let started = Instant::now();
            let result = load_config_text(&config)
                .and_then(|text| RunConfig::parse(&text))
                .map(|mut parsed| {
                    if let Some(seed) = seed {
                        parsed.seed = seed;
                    }
                    parsed
                })
                .and_then(|parsed| runner::run(&parsed, &out, threads));
            match result {
                Ok(report) => {
                    // Timing goes to stderr only: report bytes stay
                    // reproducible across machines and thread counts.
                    eprintln!(
                        "{}: {} in {:.2}s (artifacts in {})",
                        report.experiment,
                        if report.pass { "PASS" } else { "FAIL" },
                        started.elapsed().as_secs_f64(),
                        out.display()
                    );
                    ExitCode::from(outcome_exit_code(&report) as u8)
                }
                Err(err) => {
                    eprintln!("{err}");
                    ExitCode::from(err.exit_code() as u8)
                }
            }
        }
    }
}
