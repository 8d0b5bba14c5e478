use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use cdrank_cli::config::{AnalysisConfig, DirectionArg, MissingPolicy, Mode, OutputFormat};
use cdrank_cli::run::run_analyze;

/// Friedman/Nemenyi ranking of competing approaches with critical-distance
/// grouping applied on the average-rank scale.
#[derive(Parser)]
#[command(name = "cdrank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one results CSV per metric and write reports.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Results CSV (header: dataset,<approach>,...); repeat for several
    /// metrics.
    #[arg(long = "input", value_name = "CSV", required = true)]
    inputs: Vec<PathBuf>,

    /// Significance level, strictly between 0 and 1.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,

    /// Whether larger or smaller metric values are better.
    #[arg(long, value_enum, default_value_t = DirectionArg::Higher)]
    direction: DirectionArg,

    /// Ranking procedure(s) to report.
    #[arg(long, value_enum, default_value_t = Mode::Corrected)]
    mode: Mode,

    /// Missing-cell policy applied before the analysis.
    #[arg(long = "missing", value_enum, default_value_t = MissingPolicy::Error)]
    missing: MissingPolicy,

    /// Report format; repeat for several (default: json).
    #[arg(long = "format", value_enum)]
    formats: Vec<OutputFormat>,

    /// Write a critical-difference diagram here (multi-input runs get a
    /// -<metric> suffix per file).
    #[arg(long, value_name = "SVG")]
    diagram: Option<PathBuf>,

    /// Re-derive the report from its own numbers and fail (exit 2) on any
    /// mismatch or on dominated approaches being outranked.
    #[arg(long)]
    check_consistency: bool,

    /// Output directory for reports.
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Optional approach,family mapping overriding the Family-VARIANT name
    /// convention.
    #[arg(long, value_name = "CSV")]
    families: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(args) => {
            let config = AnalysisConfig {
                alpha: args.alpha,
                direction: args.direction,
                mode: args.mode,
                missing_policy: args.missing,
                output_formats: args.formats,
                diagram_path: args.diagram,
                check_consistency: args.check_consistency,
                out_dir: args.out,
                families_file: args.families,
            };
            match config.validate() {
                Ok(config) => run_analyze(&config, &args.inputs),
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
    };
    std::process::exit(code);
}
