//! `jgeom`: Peirce data, geodesics, distances and interpolants for
//! orthogonal projections stored as JSON matrix files.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use jgeom::Error;

use commands::Report;
use config::{OutputFormat, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "jgeom", version, about = "Geometry of orthogonal projections from matrix files")]
struct Cli {
    /// Config file (default: ./jgconfig.json when present).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    tol_cluster: Option<f64>,
    #[arg(long, global = true)]
    tol_invert: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hermiticity, projection test, rank and eigenvalue extrema.
    Check { file: PathBuf },
    /// Split x into the Peirce parts of a; writes <prefix>_{one,half,zero}.json.
    Peirce {
        a: PathBuf,
        x: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value = "peirce")]
        prefix: String,
    },
    /// Sample the geodesic from a to b at t = i/(N-1).
    Geodesic {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Riemann distance, principal angles and the pair's case ranks.
    Distance { a: PathBuf, b: PathBuf },
    /// Write the geodesic point at parameter t.
    Interpolate {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::AntipodalPair { .. } | Error::RankMismatch { .. } | Error::NotScalarPair { .. } => 3,
        Error::NumericalFailure(_) => 4,
        _ => 2,
    }
}

fn render(report: &Report, cfg: &RunConfig) -> String {
    match cfg.output_format {
        OutputFormat::Json => {
            let doc = json!({
                "command": report.command,
                "inputs": report.inputs,
                "tolerances": cfg.tolerances,
                "result": report.result,
                "residuals": report.residuals,
            });
            serde_json::to_string_pretty(&doc).expect("report serialization") + "\n"
        }
        OutputFormat::Csv => report.csv.clone(),
    }
}

fn run(cli: Cli) -> jgeom::Result<String> {
    let samples = match &cli.command {
        Command::Geodesic { samples, .. } => *samples,
        _ => None,
    };
    let cfg = RunConfig::resolve(&Overrides {
        config: cli.config,
        tol_cluster: cli.tol_cluster,
        tol_invert: cli.tol_invert,
        format: cli.format,
        samples,
    })?;
    let report = match &cli.command {
        Command::Check { file } => commands::check(file, &cfg)?,
        Command::Peirce { a, x, out_dir, prefix } => commands::peirce_cmd(a, x, out_dir, prefix, &cfg)?,
        Command::Geodesic { a, b, .. } => commands::geodesic_cmd(a, b, &cfg)?,
        Command::Distance { a, b } => commands::distance_cmd(a, b, &cfg)?,
        Command::Interpolate { a, b, t, out } => commands::interpolate(a, b, *t, out, &cfg)?,
    };
    Ok(render(&report, &cfg))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
