//! `tfshift`: lattice reductions, density studies and finite Gabor analysis
//! from the command line.
//!
//! Exit codes: 0 success, 1 unparsable arguments, 2 violated precondition,
//! 3 negative analysis outcome.

mod commands;
mod parse;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "tfshift",
    version,
    about = "Time-frequency shift invariance toolkit"
)]
struct Cli {
    /// Directory for output files and `run_manifest.json`.
    #[arg(long = "output-dir", global = true, default_value = ".")]
    output_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Move an extra shift `(ra/m, sb/m)` onto the time axis.
    Reduce(commands::ReduceArgs),
    /// Map a rational lattice onto a separable one.
    Separate(commands::SeparateArgs),
    /// Order of a rational point modulo a lattice.
    Order(commands::OrderArgs),
    /// The four invariance criteria for the shift `(a/ν, 0)`.
    Criteria(commands::CriteriaArgs),
    /// Invariance residuals over a refined lattice.
    Scan(commands::ScanArgs),
    /// Empirical lower Beurling density.
    Density(commands::DensityArgs),
    /// Undersampled Gaussian pipeline.
    Gaussian(commands::GaussianArgs),
    /// Covering radius and discrepancy of `t·z` modulo a lattice.
    Equidistribution(commands::EquidistributionArgs),
    /// Canonical dual window and frame operator.
    DualWindow(commands::DualArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Reduce(_) => "reduce",
            Command::Separate(_) => "separate",
            Command::Order(_) => "order",
            Command::Criteria(_) => "criteria",
            Command::Scan(_) => "scan",
            Command::Density(_) => "density",
            Command::Gaussian(_) => "gaussian",
            Command::Equidistribution(_) => "equidistribution",
            Command::DualWindow(_) => "dual-window",
        }
    }

    fn config(&self) -> serde_json::Value {
        let v = match self {
            Command::Reduce(a) => serde_json::to_value(a),
            Command::Separate(a) => serde_json::to_value(a),
            Command::Order(a) => serde_json::to_value(a),
            Command::Criteria(a) => serde_json::to_value(a),
            Command::Scan(a) => serde_json::to_value(a),
            Command::Density(a) => serde_json::to_value(a),
            Command::Gaussian(a) => serde_json::to_value(a),
            Command::Equidistribution(a) => serde_json::to_value(a),
            Command::DualWindow(a) => serde_json::to_value(a),
        };
        v.expect("arguments serialise")
    }

    fn run(&self) -> Result<Outcome, Failure> {
        match self {
            Command::Reduce(a) => commands::reduce(a),
            Command::Separate(a) => commands::separate_cmd(a),
            Command::Order(a) => commands::order(a),
            Command::Criteria(a) => commands::criteria(a),
            Command::Scan(a) => commands::scan(a),
            Command::Density(a) => commands::density(a),
            Command::Gaussian(a) => commands::gaussian(a),
            Command::Equidistribution(a) => commands::equidistribution(a),
            Command::DualWindow(a) => commands::dual_window(a),
        }
    }
}

fn write_outputs(dir: &Path, cli: &Cli, outcome: &Outcome, status: &str) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, bytes) in &outcome.files {
        std::fs::write(dir.join(name), bytes)?;
    }
    let manifest = json!({
        "command": cli.command.name(),
        "config": cli.command.config(),
        "version": env!("CARGO_PKG_VERSION"),
        "constants": outcome.constants,
        "outputs": outcome.files.iter().map(|(n, _)| n).collect::<Vec<_>>(),
        "status": status,
    });
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    text.push('\n');
    std::fs::write(dir.join("run_manifest.json"), text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (outcome, code, status) = match cli.command.run() {
        Ok(o) => match &o.negative {
            Some(msg) => {
                eprintln!("negative result: {msg}");
                (o, 3, "negative")
            }
            None => (o, 0, "ok"),
        },
        Err(Failure::Precondition(e)) => {
            eprintln!("error: {e}");
            let o = Outcome {
                report: json!({ "error": e.name(), "message": e.to_string() }),
                files: Vec::new(),
                constants: json!({}),
                negative: None,
            };
            (o, 2, e.name())
        }
        Err(Failure::Negative(msg)) => {
            eprintln!("negative result: {msg}");
            let o = Outcome {
                report: json!({ "error": msg }),
                files: Vec::new(),
                constants: json!({}),
                negative: None,
            };
            (o, 3, "negative")
        }
    };
    // A closed pipe on stdout is not an error of the run.
    let _ = writeln!(
        std::io::stdout(),
        "{}",
        serde_json::to_string_pretty(&outcome.report).expect("report serialises")
    );
    if let Err(e) = write_outputs(&cli.output_dir, &cli, &outcome, status) {
        eprintln!("error: IoError: {}: {e}", cli.output_dir.display());
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
