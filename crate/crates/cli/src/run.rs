use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cdrank_core::{group_by_cd, Error as CoreError, MeanRanks, NemenyiParams, Probability};

use crate::aggregate::aggregate_rankscores;
use crate::analysis::{analyze_matrix, AnalysisOutput};
use crate::config::{AnalysisConfig, OutputFormat};
use crate::diagram::render_cd_diagram;
use crate::error::{CliError, Result};
use crate::input::{missing_policy_outcome, parse_results_csv};
use crate::report::{to_csv, to_json, to_markdown, Report, SCHEMA_VERSION};

/// Full pipeline: parse -> missing policy -> per-metric analysis ->
/// aggregation -> consistency checks -> emission. Returns the process exit
/// code (0 ok, 1 data error, 2 config/analysis error, 3 numeric error).
pub fn run_analyze(config: &AnalysisConfig, inputs: &[PathBuf]) -> i32 {
    match run_inner(config, inputs) {
        Ok(summary) => {
            print!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_inner(config: &AnalysisConfig, inputs: &[PathBuf]) -> Result<String> {
    if inputs.is_empty() {
        return Err(CliError::Config(
            "at least one --input file is required".into(),
        ));
    }
    let alpha = Probability::new(config.alpha)
        .map_err(|e| CliError::Config(format!("--alpha: {e}")))?;
    let families = config
        .families_file
        .as_deref()
        .map(load_families)
        .transpose()?;

    let mut outputs: Vec<AnalysisOutput> = Vec::new();
    let mut roster: Vec<String> = Vec::new();
    for path in inputs {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        let metric = metric_name(path);
        if outputs.iter().any(|o| o.report.metric == metric) {
            return Err(CliError::Config(format!(
                "duplicate metric name '{metric}'; input file stems must be unique"
            )));
        }
        let source = path.display().to_string();
        let matrix = parse_results_csv(&bytes, &source, config.direction.into(), &metric)?;
        roster.extend(matrix.approaches().iter().cloned());
        let outcome = missing_policy_outcome(matrix, config.missing_policy)?;
        outputs.push(analyze_matrix(
            &outcome.matrix,
            &source,
            outcome.dropped_approaches,
            outcome.dropped_datasets,
            alpha,
            config.mode,
        )?);
    }

    let per_scores: Vec<BTreeMap<String, f64>> = outputs
        .iter()
        .map(|o| o.aggregate_scores.clone())
        .collect();
    let aggregate = aggregate_rankscores(&roster, &per_scores, families.as_ref());
    let findings = outputs
        .iter()
        .flat_map(|o| o.findings.iter().cloned())
        .collect();
    let report = Report {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        analyses: outputs.iter().map(|o| o.report.clone()).collect(),
        aggregate,
        findings,
    };

    if config.check_consistency {
        check_report_consistency(&report)?;
        let dominated: Vec<String> = report
            .findings
            .iter()
            .filter(|f| f.mode == "corrected" && f.finding.dominated)
            .map(|f| {
                format!(
                    "{}: {} dominates {} yet scores below it",
                    f.metric, f.finding.better_mean_approach, f.finding.worse_mean_approach
                )
            })
            .collect();
        if !dominated.is_empty() {
            return Err(CoreError::Analysis(format!(
                "consistency check failed; dominated approaches were outranked: {}",
                dominated.join("; ")
            ))
            .into());
        }
    }

    std::fs::create_dir_all(&config.out_dir)
        .map_err(|e| CliError::io(&config.out_dir, e))?;
    let mut summary = String::new();
    for a in &report.analyses {
        let groups = a
            .corrected
            .as_ref()
            .map(|c| c.group_count.to_string())
            .unwrap_or_else(|| "-".into());
        let buckets = a
            .legacy
            .as_ref()
            .map(|l| l.bucket_count.to_string())
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            summary,
            "{}: k={} N={} chi2={:.4} p={:.4} {} cd={:.4} groups={} legacy_buckets={}",
            a.metric,
            a.k,
            a.n_datasets,
            a.friedman.statistic,
            a.friedman.p_value.value(),
            if a.friedman.significant {
                "significant"
            } else {
                "not-significant"
            },
            a.cd,
            groups,
            buckets,
        );
        for w in &a.warnings {
            let _ = writeln!(summary, "  warning: {w}");
        }
    }
    for w in &report.aggregate.warnings {
        let _ = writeln!(summary, "warning: {w}");
    }
    if !report.findings.is_empty() {
        let _ = writeln!(
            summary,
            "{} inconsistency finding(s); see the report for details",
            report.findings.len()
        );
    }

    for fmt in &config.output_formats {
        let bytes = match fmt {
            OutputFormat::Json => to_json(&report),
            OutputFormat::Csv => to_csv(&report),
            OutputFormat::Markdown => to_markdown(&report),
        };
        let path = config.out_dir.join(fmt.file_name());
        atomic_write(&path, &bytes)?;
        let _ = writeln!(summary, "wrote {}", path.display());
    }

    if let Some(diagram) = &config.diagram_path {
        for output in &outputs {
            let path = if outputs.len() == 1 {
                diagram.clone()
            } else {
                suffixed(diagram, &output.report.metric)
            };
            let mr = MeanRanks::new(output.report.mean_ranks.clone())?;
            let svg = render_cd_diagram(
                &output.grouping,
                &mr,
                &output.params,
                &output.report.approaches,
                &output.report.metric,
            );
            atomic_write(&path, &svg)?;
            let _ = writeln!(summary, "wrote {}", path.display());
        }
    }

    Ok(summary)
}

fn metric_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "metric".into())
}

/// `out.svg` + metric `auc` -> `out-auc.svg`; used when one --diagram path
/// must serve several inputs.
fn suffixed(path: &Path, metric: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "svg".into());
    path.with_file_name(format!("{stem}-{metric}.{ext}"))
}

/// All writes go through a temp file in the target directory followed by a
/// rename, so readers never observe a partial report.
fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .ok_or_else(|| CliError::Config(format!("not a file path: {}", path.display())))?;
    let tmp = path.with_file_name(format!("{file_name}.tmp"));
    std::fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))?;
    Ok(())
}

/// Families file: one `approach,family` pair per line; blank lines and
/// `#` comments are skipped, as is an optional `approach,family` header.
fn load_families(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if i == 0 && line == "approach,family" {
            continue;
        }
        let (approach, family) = line.split_once(',').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected 'approach,family', got '{line}'",
                path.display(),
                i + 1
            ))
        })?;
        map.insert(approach.trim().to_string(), family.trim().to_string());
    }
    Ok(map)
}

/// Re-derives every corrected grouping from the report's own mean ranks and
/// cd and checks the published rankscores against 1 - group/rank_max.
fn check_report_consistency(report: &Report) -> Result<()> {
    for a in &report.analyses {
        let Some(c) = &a.corrected else { continue };
        let mr = MeanRanks::new(a.mean_ranks.clone())?;
        let alpha = Probability::new(a.alpha)
            .map_err(|e| CliError::Config(format!("reported alpha invalid: {e}")))?;
        let params = NemenyiParams::with_cd(alpha, a.k, a.n_datasets, a.cd)?;
        let g = group_by_cd(&mr, &params, &a.approaches)?;
        if g.group_index != c.group_index {
            return Err(CoreError::Analysis(format!(
                "{}: reported groups do not match the grouping recomputed from the report's mean ranks and cd",
                a.metric
            ))
            .into());
        }
        for (i, &score) in c.rankscores.iter().enumerate() {
            let want = if g.rank_max == 0 {
                1.0
            } else {
                1.0 - g.group_index[i] as f64 / g.rank_max as f64
            };
            if (score - want).abs() > 1e-12 {
                return Err(CoreError::Analysis(format!(
                    "{}: rankscore of {} is {score}, expected {want} from 1 - group/rank_max",
                    a.metric, a.approaches[i]
                ))
                .into());
            }
        }
    }
    Ok(())
}
