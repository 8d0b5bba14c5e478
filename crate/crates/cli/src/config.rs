use std::path::PathBuf;

use serde::Serialize;

use cdrank_core::{Direction, Probability};

use crate::error::{CliError, Result};

/// Which post-hoc ranking procedures to run and report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Gap grouping with cd applied on the average-rank scale.
    Corrected,
    /// The historical three-bucket scheme on the compressed z' scale.
    Legacy,
    /// Both procedures plus a side-by-side comparison.
    Both,
}

/// What to do with missing cells before the (complete-design) analysis.
/// Exactly one policy applies per run, so no cell is ever subject to both
/// drop rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MissingPolicy {
    /// Refuse to analyze, listing every missing cell.
    Error,
    /// Drop every approach column that has a missing cell.
    DropApproach,
    /// Drop every dataset row that has a missing cell.
    DropDataset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

impl OutputFormat {
    pub fn file_name(self) -> &'static str {
        match self {
            OutputFormat::Json => "report.json",
            OutputFormat::Csv => "report.csv",
            OutputFormat::Markdown => "report.md",
        }
    }
}

/// Metric orientation as spelled on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum DirectionArg {
    /// Larger metric values are better (e.g. AUC).
    Higher,
    /// Smaller metric values are better (e.g. error rate).
    Lower,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::Higher => Direction::HigherIsBetter,
            DirectionArg::Lower => Direction::LowerIsBetter,
        }
    }
}

/// Validated run configuration; serialized verbatim into the report.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisConfig {
    pub alpha: f64,
    pub direction: DirectionArg,
    pub mode: Mode,
    pub missing_policy: MissingPolicy,
    pub output_formats: Vec<OutputFormat>,
    pub diagram_path: Option<PathBuf>,
    pub check_consistency: bool,
    pub out_dir: PathBuf,
    pub families_file: Option<PathBuf>,
}

impl AnalysisConfig {
    /// Validates the numeric fields and normalizes the format list (first
    /// occurrence wins, duplicates removed).
    pub fn validate(mut self) -> Result<Self> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::Config(format!(
                "--alpha must lie strictly inside (0, 1), got {}",
                self.alpha
            )));
        }
        if self.output_formats.is_empty() {
            self.output_formats.push(OutputFormat::Json);
        }
        let mut seen = Vec::new();
        self.output_formats.retain(|f| {
            if seen.contains(f) {
                false
            } else {
                seen.push(*f);
                true
            }
        });
        Ok(self)
    }

    pub fn alpha_probability(&self) -> Probability {
        // validate() guarantees the open interval.
        Probability::new(self.alpha).expect("validated alpha")
    }
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            alpha: 0.05,
            direction: DirectionArg::Higher,
            mode: Mode::Corrected,
            missing_policy: MissingPolicy::Error,
            output_formats: vec![OutputFormat::Json],
            diagram_path: None,
            check_consistency: false,
            out_dir: PathBuf::from("."),
            families_file: None,
        }
    }
}
