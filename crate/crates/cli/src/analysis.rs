use std::collections::BTreeMap;

use serde::Serialize;

use cdrank_core::{
    compare_modes, critical_distance, detect_inconsistencies, detect_legacy_inconsistencies,
    friedman_from_ranks, group_by_cd, legacy_three_rank, mean_ranks, pairwise_significance,
    rank_matrix, FriedmanResult, Grouping, InconsistencyFinding, ModeComparison, NemenyiParams,
    PairwiseComparison, Probability, ResultMatrix,
};

use crate::config::Mode;
use crate::error::Result;

/// Everything reported for one metric file.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub metric: String,
    pub input: String,
    pub k: usize,
    pub n_datasets: usize,
    pub alpha: f64,
    pub q_alpha: f64,
    pub cd: f64,
    pub approaches: Vec<String>,
    pub dropped_approaches: Vec<String>,
    pub dropped_datasets: Vec<String>,
    pub friedman: FriedmanResult,
    pub mean_ranks: Vec<f64>,
    pub mean_values: Vec<f64>,
    pub corrected: Option<CorrectedSection>,
    pub legacy: Option<LegacySection>,
    pub mode_comparison: Option<ModeComparison>,
    pub warnings: Vec<String>,
}

/// Gap grouping on the average-rank scale.
#[derive(Debug, Clone, Serialize)]
pub struct CorrectedSection {
    /// Approach indices, best first.
    pub order: Vec<usize>,
    pub group_index: Vec<usize>,
    pub rank_max: usize,
    pub group_count: usize,
    pub rankscores: Vec<f64>,
    pub significant_pairs: usize,
    pub pairwise: Vec<PairwiseComparison>,
}

/// The historical three-bucket scheme, reported for comparison.
#[derive(Debug, Clone, Serialize)]
pub struct LegacySection {
    pub legacy_scale: Vec<f64>,
    pub three_rank: Vec<u8>,
    pub rankscores: Vec<f64>,
    pub bucket_count: usize,
}

/// An inconsistency finding tagged with where it came from.
#[derive(Debug, Clone, Serialize)]
pub struct TaggedFinding {
    pub metric: String,
    /// "corrected" or "legacy": which scoring produced the inversion.
    pub mode: String,
    #[serde(flatten)]
    pub finding: InconsistencyFinding,
}

/// One analyzed metric: the report section plus the pieces downstream steps
/// need (diagram rendering, aggregation, finding escalation).
#[derive(Debug, Clone)]
pub struct AnalysisOutput {
    pub report: AnalysisReport,
    pub grouping: Grouping,
    pub params: NemenyiParams,
    /// Rankscores feeding aggregation: corrected unless the run is
    /// legacy-only.
    pub aggregate_scores: BTreeMap<String, f64>,
    pub findings: Vec<TaggedFinding>,
}

/// Runs the full analysis pipeline over one complete matrix.
pub fn analyze_matrix(
    m: &ResultMatrix,
    source: &str,
    dropped_approaches: Vec<String>,
    dropped_datasets: Vec<String>,
    alpha: Probability,
    mode: Mode,
) -> Result<AnalysisOutput> {
    let rm = rank_matrix(m)?;
    let mr = mean_ranks(&rm);
    let friedman = friedman_from_ranks(&rm, alpha)?;
    let params = critical_distance(alpha, m.k(), m.n_datasets())?;

    // The corrected grouping is always computed: the diagram and the
    // consistency checks are defined on the average-rank scale even when
    // only legacy output was requested.
    let grouping = group_by_cd(&mr, &params, m.approaches())?;
    let pairwise = pairwise_significance(&mr, &params)?;
    let legacy = if mode != Mode::Corrected {
        Some(legacy_three_rank(&mr, &params)?)
    } else {
        None
    };
    let mode_comparison = if mode == Mode::Both {
        Some(compare_modes(&mr, &params, m.approaches())?)
    } else {
        None
    };

    let mut findings = Vec::new();
    if mode != Mode::Legacy {
        for finding in detect_inconsistencies(m, &grouping)? {
            findings.push(TaggedFinding {
                metric: m.metric_name().to_string(),
                mode: "corrected".into(),
                finding,
            });
        }
    }
    if let Some(lr) = &legacy {
        for finding in detect_legacy_inconsistencies(m, lr)? {
            findings.push(TaggedFinding {
                metric: m.metric_name().to_string(),
                mode: "legacy".into(),
                finding,
            });
        }
    }

    let mut warnings = Vec::new();
    if !friedman.significant {
        warnings.push(format!(
            "Friedman test not significant at alpha = {} (p = {}); post-hoc groups are reported but carry no evidence of differences",
            alpha.value(),
            friedman.p_value.value()
        ));
    }

    let legacy_scores = legacy.as_ref().map(|lr| lr.rankscores());
    let aggregate_source: &[f64] = if mode == Mode::Legacy {
        legacy_scores.as_deref().expect("legacy mode computes legacy ranks")
    } else {
        &grouping.rankscore
    };
    let aggregate_scores: BTreeMap<String, f64> = m
        .approaches()
        .iter()
        .cloned()
        .zip(aggregate_source.iter().copied())
        .collect();

    let significant_pairs = pairwise.iter().filter(|c| c.significant).count();
    let corrected = (mode != Mode::Legacy).then(|| CorrectedSection {
        order: grouping.order.clone(),
        group_index: grouping.group_index.clone(),
        rank_max: grouping.rank_max,
        group_count: grouping.group_count(),
        rankscores: grouping.rankscore.clone(),
        significant_pairs,
        pairwise,
    });
    let legacy_section = legacy.map(|lr| LegacySection {
        rankscores: lr.rankscores(),
        bucket_count: lr.bucket_count(),
        legacy_scale: lr.legacy_scale,
        three_rank: lr.three_rank,
    });

    let report = AnalysisReport {
        metric: m.metric_name().to_string(),
        input: source.to_string(),
        k: m.k(),
        n_datasets: m.n_datasets(),
        alpha: alpha.value(),
        q_alpha: params.q_alpha,
        cd: params.cd,
        approaches: m.approaches().to_vec(),
        dropped_approaches,
        dropped_datasets,
        friedman,
        mean_ranks: mr.values().to_vec(),
        mean_values: m.mean_values()?,
        corrected,
        legacy: legacy_section,
        mode_comparison,
        warnings,
    };

    Ok(AnalysisOutput {
        report,
        grouping,
        params,
        aggregate_scores,
        findings,
    })
}
