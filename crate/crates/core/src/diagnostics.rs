//! Diagnostics for the mean-vs-rankscore inconsistency that motivated the
//! corrected grouping, plus a side-by-side comparison of the legacy and
//! corrected ranking modes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nemenyi::{group_by_cd, legacy_three_rank, Grouping, LegacyRanks, NemenyiParams};
use crate::ranking::{Direction, MeanRanks, ResultMatrix};

/// A pair of approaches where the one with the better mean metric value
/// received the worse rankscore.
#[derive(Debug, Clone, Serialize)]
pub struct InconsistencyFinding {
    pub better_mean_approach: String,
    pub worse_mean_approach: String,
    /// Absolute mean advantage of the better-mean approach; always > 0.
    pub mean_delta: f64,
    /// rankscore(better mean) − rankscore(worse mean); always < 0.
    pub rankscore_delta: f64,
    /// True when the better-mean approach also wins on every single dataset,
    /// which makes the inversion a hard violation rather than a curiosity.
    pub dominated: bool,
}

/// Legacy-vs-corrected comparison for one analysis.
#[derive(Debug, Clone, Serialize)]
pub struct ModeComparison {
    pub group_count_corrected: usize,
    /// Never exceeds 3: the legacy scheme cannot express more levels.
    pub group_count_legacy: usize,
    /// Approaches whose set of same-group peers differs between the legacy
    /// buckets and the corrected groups.
    pub approaches_with_changed_bucket: Vec<String>,
    pub per_approach: Vec<ModeComparisonRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeComparisonRow {
    pub approach: String,
    pub legacy_bucket: u8,
    pub corrected_group: usize,
    pub corrected_rankscore: f64,
}

/// Scans all pairs for mean/rankscore inversions against the corrected
/// grouping's rankscores.
pub fn detect_inconsistencies(
    m: &ResultMatrix,
    g: &Grouping,
) -> Result<Vec<InconsistencyFinding>> {
    if g.rankscore.len() != m.k() {
        return Err(Error::Analysis(format!(
            "grouping covers {} approaches but the matrix has {}",
            g.rankscore.len(),
            m.k()
        )));
    }
    findings_against_scores(m, &g.rankscore)
}

/// The same scan against the legacy three-bucket scores; this is the probe
/// that reproduces the pitfall on crafted instances.
pub fn detect_legacy_inconsistencies(
    m: &ResultMatrix,
    lr: &LegacyRanks,
) -> Result<Vec<InconsistencyFinding>> {
    if lr.three_rank.len() != m.k() {
        return Err(Error::Analysis(format!(
            "legacy ranks cover {} approaches but the matrix has {}",
            lr.three_rank.len(),
            m.k()
        )));
    }
    findings_against_scores(m, &lr.rankscores())
}

fn findings_against_scores(
    m: &ResultMatrix,
    scores: &[f64],
) -> Result<Vec<InconsistencyFinding>> {
    let means = m.mean_values()?;
    let mut findings = Vec::new();
    for a in 0..m.k() {
        for b in (a + 1)..m.k() {
            if means[a] == means[b] {
                continue;
            }
            // "Better mean" follows the metric direction.
            let better_is_a = match m.direction() {
                Direction::HigherIsBetter => means[a] > means[b],
                Direction::LowerIsBetter => means[a] < means[b],
            };
            let (better, worse) = if better_is_a { (a, b) } else { (b, a) };
            if scores[better] >= scores[worse] {
                continue;
            }
            findings.push(InconsistencyFinding {
                better_mean_approach: m.approaches()[better].clone(),
                worse_mean_approach: m.approaches()[worse].clone(),
                mean_delta: (means[better] - means[worse]).abs(),
                rankscore_delta: scores[better] - scores[worse],
                dominated: strictly_wins(m, better, worse),
            });
        }
    }
    Ok(findings)
}

fn strictly_wins(m: &ResultMatrix, a: usize, b: usize) -> bool {
    (0..m.n_datasets()).all(|row| {
        let va = m.value(row, a);
        let vb = m.value(row, b);
        match m.direction() {
            Direction::HigherIsBetter => va > vb,
            Direction::LowerIsBetter => va < vb,
        }
    })
}

/// Runs both the corrected gap grouping and the legacy bucketing over the
/// same mean ranks and tabulates the differences.
pub fn compare_modes(
    mr: &MeanRanks,
    params: &NemenyiParams,
    names: &[String],
) -> Result<ModeComparison> {
    let grouping = group_by_cd(mr, params, names)?;
    let legacy = legacy_three_rank(mr, params)?;
    let k = names.len();

    let changed: Vec<String> = (0..k)
        .filter(|&i| {
            let legacy_peers: Vec<usize> = (0..k)
                .filter(|&j| legacy.three_rank[j] == legacy.three_rank[i])
                .collect();
            let corrected_peers: Vec<usize> = (0..k)
                .filter(|&j| grouping.group_index[j] == grouping.group_index[i])
                .collect();
            legacy_peers != corrected_peers
        })
        .map(|i| names[i].clone())
        .collect();

    let per_approach = (0..k)
        .map(|i| ModeComparisonRow {
            approach: names[i].clone(),
            legacy_bucket: legacy.three_rank[i],
            corrected_group: grouping.group_index[i],
            corrected_rankscore: grouping.rankscore[i],
        })
        .collect();

    Ok(ModeComparison {
        group_count_corrected: grouping.group_count(),
        group_count_legacy: legacy.bucket_count(),
        approaches_with_changed_bucket: changed,
        per_approach,
    })
}
