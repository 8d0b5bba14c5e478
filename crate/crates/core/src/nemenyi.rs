//! Nemenyi post-hoc analysis: critical distance, pairwise z / z′ statistics
//! (including the compressed legacy scale), CD-gap grouping, and the
//! normalized rankscore, plus the legacy three-bucket scheme.

use serde::Serialize;

use crate::distributions::{studentized_range_quantile, Probability};
use crate::error::{Error, Result};
use crate::ranking::MeanRanks;

/// Parameters of one Nemenyi analysis.
///
/// Invariants: `q_alpha` is the 1−α studentized-range quantile for k means
/// divided by √2, and `cd = q_alpha · √(k(k+1)/(6·n_datasets))`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NemenyiParams {
    pub alpha: Probability,
    pub k: usize,
    pub n_datasets: usize,
    pub q_alpha: f64,
    pub cd: f64,
}

/// One unordered pairwise comparison between approaches `i` and `j`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairwiseComparison {
    pub i: usize,
    pub j: usize,
    /// Signed difference of average ranks, R_i − R_j.
    pub rank_diff: f64,
    /// Standardized rank difference.
    pub z: f64,
    /// |z|·√2: the compressed statistic the legacy pipeline mistook for an
    /// average rank.
    pub z_prime: f64,
    /// True when |rank_diff| exceeds the critical distance.
    pub significant: bool,
}

/// CD-gap grouping of approaches by average rank, with normalized rankscores.
#[derive(Debug, Clone, Serialize)]
pub struct Grouping {
    /// Approach indices sorted best first (descending mean rank, ties by
    /// name).
    pub order: Vec<usize>,
    /// Group index per approach in original index order; 0 is the best group.
    pub group_index: Vec<usize>,
    /// Highest group index.
    pub rank_max: usize,
    /// 1 − group_index/rank_max per approach; all 1.0 when rank_max = 0.
    pub rankscore: Vec<f64>,
}

impl Grouping {
    pub fn group_count(&self) -> usize {
        self.rank_max + 1
    }
}

/// The legacy three-bucket ranking computed on the compressed z′ scale.
#[derive(Debug, Clone, Serialize)]
pub struct LegacyRanks {
    /// Per approach: z′ distance from the worst-ranked approach.
    pub legacy_scale: Vec<f64>,
    /// Bucket per approach: 1 = within cd of the best legacy score,
    /// 3 = within cd of the worst, 2 = neither. Overlaps resolve to 1.
    pub three_rank: Vec<u8>,
}

impl LegacyRanks {
    pub fn bucket_count(&self) -> usize {
        let mut seen = [false; 3];
        for &b in &self.three_rank {
            seen[(b - 1) as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// The fixed three-level normalization of the bucket scheme:
    /// bucket 1 → 1.0, bucket 2 → 0.5, bucket 3 → 0.0.
    pub fn rankscores(&self) -> Vec<f64> {
        self.three_rank
            .iter()
            .map(|&b| 1.0 - (b - 1) as f64 / 2.0)
            .collect()
    }
}

fn validate_shape(k: usize, n_datasets: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Analysis(format!(
            "need at least 2 approaches, got {k}"
        )));
    }
    if n_datasets < 2 {
        return Err(Error::Analysis(format!(
            "need at least 2 datasets, got {n_datasets}"
        )));
    }
    Ok(())
}

// √(k(k+1)/(6N)): the standard error of a rank difference, and the unit in
// which cd relates to q_alpha.
fn rank_diff_scale(k: usize, n_datasets: usize) -> f64 {
    let kf = k as f64;
    (kf * (kf + 1.0) / (6.0 * n_datasets as f64)).sqrt()
}

impl NemenyiParams {
    /// Builds params with an externally supplied critical distance, deriving
    /// q_alpha backwards so the type invariant still holds. Intended for
    /// replaying published critical values and for grouping fixtures; real
    /// analyses use [`critical_distance`].
    pub fn with_cd(alpha: Probability, k: usize, n_datasets: usize, cd: f64) -> Result<Self> {
        validate_shape(k, n_datasets)?;
        if !cd.is_finite() || cd <= 0.0 {
            return Err(Error::domain(
                "NemenyiParams::with_cd",
                format!("critical distance must be positive and finite, got {cd}"),
            ));
        }
        Ok(NemenyiParams {
            alpha,
            k,
            n_datasets,
            q_alpha: cd / rank_diff_scale(k, n_datasets),
            cd,
        })
    }
}

/// Nemenyi critical distance at significance level `alpha` for `k`
/// approaches over `n_datasets` datasets:
///
/// ```text
/// cd = q(1−α; k, ∞)/√2 · √(k(k+1)/(6N)) = q(1−α; k, ∞) · √(k(k+1)/(12N))
/// ```
pub fn critical_distance(
    alpha: Probability,
    k: usize,
    n_datasets: usize,
) -> Result<NemenyiParams> {
    validate_shape(k, n_datasets)?;
    let a = alpha.value();
    if a <= 0.0 || a >= 1.0 {
        return Err(Error::domain(
            "critical_distance",
            format!("significance level must lie strictly inside (0, 1), got {a}"),
        ));
    }
    let q = studentized_range_quantile(alpha.complement(), k)?;
    let q_alpha = q / std::f64::consts::SQRT_2;
    Ok(NemenyiParams {
        alpha,
        k,
        n_datasets,
        q_alpha,
        cd: q_alpha * rank_diff_scale(k, n_datasets),
    })
}

/// Standardized difference of two average ranks.
pub fn z_value(r_i: f64, r_j: f64, k: usize, n_datasets: usize) -> f64 {
    (r_i - r_j) / rank_diff_scale(k, n_datasets)
}

/// |z|·√2: the compressed z′ statistic of the legacy pipeline.
pub fn legacy_pstat(r_i: f64, r_j: f64, k: usize, n_datasets: usize) -> f64 {
    z_value(r_i, r_j, k, n_datasets).abs() * std::f64::consts::SQRT_2
}

/// All k(k−1)/2 unordered pairwise comparisons.
pub fn pairwise_significance(
    mr: &MeanRanks,
    params: &NemenyiParams,
) -> Result<Vec<PairwiseComparison>> {
    let ranks = mr.values();
    if ranks.len() != params.k {
        return Err(Error::Analysis(format!(
            "mean ranks cover {} approaches but params expect k = {}",
            ranks.len(),
            params.k
        )));
    }
    let mut out = Vec::with_capacity(params.k * (params.k - 1) / 2);
    for i in 0..params.k {
        for j in (i + 1)..params.k {
            let rank_diff = ranks[i] - ranks[j];
            let z = z_value(ranks[i], ranks[j], params.k, params.n_datasets);
            out.push(PairwiseComparison {
                i,
                j,
                rank_diff,
                z,
                z_prime: z.abs() * std::f64::consts::SQRT_2,
                significant: rank_diff.abs() > params.cd,
            });
        }
    }
    Ok(out)
}

/// CD-gap grouping: sort approaches by descending mean rank (ties broken
/// lexicographically by name), open a new group whenever the gap between
/// consecutive sorted mean ranks exceeds cd, then normalize group indices
/// into rankscores.
pub fn group_by_cd(
    mr: &MeanRanks,
    params: &NemenyiParams,
    tiebreak: &[String],
) -> Result<Grouping> {
    let ranks = mr.values();
    let k = ranks.len();
    if k != params.k {
        return Err(Error::Analysis(format!(
            "mean ranks cover {k} approaches but params expect k = {}",
            params.k
        )));
    }
    if tiebreak.len() != k {
        return Err(Error::Analysis(format!(
            "got {} approach names for {k} mean ranks",
            tiebreak.len()
        )));
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        ranks[b]
            .partial_cmp(&ranks[a])
            .unwrap()
            .then_with(|| tiebreak[a].cmp(&tiebreak[b]))
    });

    let mut group_index = vec![0usize; k];
    let mut current = 0usize;
    for w in order.windows(2) {
        if ranks[w[0]] - ranks[w[1]] > params.cd {
            current += 1;
        }
        group_index[w[1]] = current;
    }
    group_index[order[0]] = 0;
    let rank_max = current;

    let rankscore = group_index
        .iter()
        .map(|&g| {
            if rank_max == 0 {
                1.0
            } else {
                1.0 - g as f64 / rank_max as f64
            }
        })
        .collect();

    Ok(Grouping {
        order,
        group_index,
        rank_max,
        rankscore,
    })
}

/// The legacy three-bucket scheme: score every approach by its z′ distance
/// from the worst-ranked approach, then bucket with cd applied on that
/// compressed scale (the pitfall this toolkit diagnoses: cd lives on the
/// average-rank scale, which is about five times wider).
pub fn legacy_three_rank(mr: &MeanRanks, params: &NemenyiParams) -> Result<LegacyRanks> {
    let ranks = mr.values();
    if ranks.len() != params.k {
        return Err(Error::Analysis(format!(
            "mean ranks cover {} approaches but params expect k = {}",
            ranks.len(),
            params.k
        )));
    }
    let min_rank = ranks.iter().cloned().fold(f64::INFINITY, f64::min);
    let legacy_scale: Vec<f64> = ranks
        .iter()
        .map(|&r| legacy_pstat(r, min_rank, params.k, params.n_datasets))
        .collect();
    let best = legacy_scale.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let worst = legacy_scale.iter().cloned().fold(f64::INFINITY, f64::min);
    let three_rank = legacy_scale
        .iter()
        .map(|&s| {
            if best - s <= params.cd {
                1
            } else if s - worst <= params.cd {
                3
            } else {
                2
            }
        })
        .collect();
    Ok(LegacyRanks {
        legacy_scale,
        three_rank,
    })
}
