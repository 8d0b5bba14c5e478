//! Command-line frontend for the ranking toolkit: CSV ingestion with a
//! missing-data policy, per-metric analysis, cross-metric rankscore
//! aggregation, JSON/CSV/Markdown reports, and SVG critical-difference
//! diagrams.

pub mod aggregate;
pub mod analysis;
pub mod config;
pub mod diagram;
pub mod error;
pub mod input;
pub mod report;
pub mod run;

pub use aggregate::{aggregate_rankscores, AggregateReport, ApproachAggregate, FamilyBest};
pub use analysis::{analyze_matrix, AnalysisOutput, AnalysisReport, TaggedFinding};
pub use config::{AnalysisConfig, DirectionArg, MissingPolicy, Mode, OutputFormat};
pub use diagram::render_cd_diagram;
pub use error::CliError;
pub use input::{apply_missing_policy, matrix_to_csv, missing_policy_outcome, parse_results_csv};
pub use report::{fmt_sig, to_csv, to_json, to_markdown, Report, SCHEMA_VERSION};
pub use run::run_analyze;
