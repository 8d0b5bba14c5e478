//! Result-matrix model, per-dataset mid-rank transform, average ranks, and
//! the Friedman omnibus test.

use serde::Serialize;

use crate::distributions::{chi_square_sf, Probability};
use crate::error::{Error, Result};

/// Whether larger or smaller metric values are better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    HigherIsBetter,
    LowerIsBetter,
}

/// One performance value per (dataset, approach) cell for a single metric.
///
/// Cells may be NaN to mark missing measurements until a missing-data policy
/// has been applied; every statistical operation requires a complete matrix
/// and reports an error otherwise. Infinities are rejected outright.
#[derive(Debug, Clone)]
pub struct ResultMatrix {
    approaches: Vec<String>,
    datasets: Vec<String>,
    values: Vec<f64>, // row-major, datasets × approaches
    direction: Direction,
    metric_name: String,
}

impl ResultMatrix {
    pub fn new(
        approaches: Vec<String>,
        datasets: Vec<String>,
        values: Vec<f64>,
        direction: Direction,
        metric_name: impl Into<String>,
    ) -> Result<Self> {
        let k = approaches.len();
        let n = datasets.len();
        if k < 2 {
            return Err(Error::Data(format!(
                "need at least 2 approaches, got {k}"
            )));
        }
        if n < 2 {
            return Err(Error::Data(format!("need at least 2 datasets, got {n}")));
        }
        if values.len() != n * k {
            return Err(Error::Data(format!(
                "expected {n} x {k} = {} values, got {}",
                n * k,
                values.len()
            )));
        }
        if let Some(dup) = first_duplicate(&approaches) {
            return Err(Error::Data(format!("duplicate approach name: {dup}")));
        }
        if let Some(dup) = first_duplicate(&datasets) {
            return Err(Error::Data(format!("duplicate dataset name: {dup}")));
        }
        for (idx, &v) in values.iter().enumerate() {
            if v.is_infinite() {
                return Err(Error::Data(format!(
                    "infinite value for dataset {}, approach {}",
                    datasets[idx / k],
                    approaches[idx % k]
                )));
            }
        }
        Ok(ResultMatrix {
            approaches,
            datasets,
            values,
            direction,
            metric_name: metric_name.into(),
        })
    }

    pub fn k(&self) -> usize {
        self.approaches.len()
    }

    pub fn n_datasets(&self) -> usize {
        self.datasets.len()
    }

    pub fn approaches(&self) -> &[String] {
        &self.approaches
    }

    pub fn datasets(&self) -> &[String] {
        &self.datasets
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn metric_name(&self) -> &str {
        &self.metric_name
    }

    pub fn value(&self, dataset: usize, approach: usize) -> f64 {
        self.values[dataset * self.k() + approach]
    }

    pub fn row(&self, dataset: usize) -> &[f64] {
        let k = self.k();
        &self.values[dataset * k..(dataset + 1) * k]
    }

    /// (dataset index, approach index) of every NaN cell.
    pub fn missing_cells(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_nan())
            .map(|(idx, _)| (idx / k, idx % k))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(|v| !v.is_nan())
    }

    /// Column mean of the raw metric per approach. Missing cells are not
    /// tolerated here; apply a policy first.
    pub fn mean_values(&self) -> Result<Vec<f64>> {
        if !self.is_complete() {
            return Err(Error::Data(
                "matrix has missing cells; apply a missing-data policy first".into(),
            ));
        }
        let k = self.k();
        let n = self.n_datasets() as f64;
        let mut sums = vec![0.0; k];
        for row in 0..self.n_datasets() {
            for (j, sum) in sums.iter_mut().enumerate() {
                *sum += self.value(row, j);
            }
        }
        Ok(sums.into_iter().map(|s| s / n).collect())
    }
}

fn first_duplicate(names: &[String]) -> Option<&str> {
    let mut seen = std::collections::HashSet::new();
    names.iter().find(|n| !seen.insert(n.as_str())).map(|n| n.as_str())
}

/// Per-dataset mid-ranks; each row is a tie-averaged permutation of 1..k.
#[derive(Debug, Clone)]
pub struct RankMatrix {
    ranks: Vec<f64>,
    n: usize,
    k: usize,
}

impl RankMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Analysis(format!(
                "need at least 2 rank rows, got {n}"
            )));
        }
        let k = rows[0].len();
        if k < 2 {
            return Err(Error::Analysis(format!(
                "need at least 2 columns of ranks, got {k}"
            )));
        }
        let mut ranks = Vec::with_capacity(n * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Data(format!(
                    "rank row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            ranks.extend_from_slice(row);
        }
        Ok(RankMatrix { ranks, n, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_datasets(&self) -> usize {
        self.n
    }

    pub fn row(&self, dataset: usize) -> &[f64] {
        &self.ranks[dataset * self.k..(dataset + 1) * self.k]
    }
}

/// Average rank per approach. Higher is better; the best possible value is k.
///
/// Outputs of [`mean_ranks`] always satisfy the textbook invariants (each
/// entry in [1, k], grand mean (k+1)/2). The constructor itself only checks
/// finiteness so that grouping fixtures can replay published rank vectors
/// that never came from a rank transform.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MeanRanks(Vec<f64>);

impl MeanRanks {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Analysis(format!(
                "need at least 2 mean ranks, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite mean rank: {v}")));
        }
        Ok(MeanRanks(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }
}

/// Friedman omnibus test outcome.
#[derive(Debug, Clone, Serialize)]
pub struct FriedmanResult {
    pub statistic: f64,
    pub df: usize,
    pub p_value: Probability,
    pub significant: bool,
}

/// Mid-ranks one row of metric values: the best value receives rank k, the
/// worst rank 1, and ties share the average of the positions they span.
pub fn rank_row(values: &[f64], direction: Direction) -> Result<Vec<f64>> {
    let k = values.len();
    if k < 2 {
        return Err(Error::Analysis(format!(
            "need at least 2 values to rank, got {k}"
        )));
    }
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::Data(format!(
                "non-finite value {v} at column {i}"
            )));
        }
    }

    // Oriented so that a larger key always means a better result; negation
    // makes the LowerIsBetter ordering the exact mirror of HigherIsBetter.
    let key = |v: f64| match direction {
        Direction::HigherIsBetter => v,
        Direction::LowerIsBetter => -v,
    };

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| key(values[a]).partial_cmp(&key(values[b])).unwrap());

    let mut ranks = vec![0.0; k];
    let mut start = 0;
    while start < k {
        let mut end = start;
        while end + 1 < k && key(values[order[end + 1]]) == key(values[order[start]]) {
            end += 1;
        }
        // Positions are 1-based; the mid-rank is the average of start+1..=end+1.
        let mid = (start + end) as f64 / 2.0 + 1.0;
        for &col in &order[start..=end] {
            ranks[col] = mid;
        }
        start = end + 1;
    }
    Ok(ranks)
}

/// Ranks every dataset row of a complete matrix.
pub fn rank_matrix(m: &ResultMatrix) -> Result<RankMatrix> {
    let k = m.k();
    let mut rows = Vec::with_capacity(m.n_datasets());
    for i in 0..m.n_datasets() {
        let row = m.row(i);
        if let Some(j) = row.iter().position(|v| v.is_nan()) {
            return Err(Error::Data(format!(
                "missing value for dataset {}, approach {}; apply a missing-data policy first",
                m.datasets()[i],
                m.approaches()[j]
            )));
        }
        rows.push(rank_row(row, m.direction())?);
    }
    debug_assert_eq!(rows[0].len(), k);
    RankMatrix::from_rows(rows)
}

/// Column means of a rank matrix.
pub fn mean_ranks(rm: &RankMatrix) -> MeanRanks {
    let k = rm.k();
    let n = rm.n_datasets() as f64;
    let mut sums = vec![0.0; k];
    for i in 0..rm.n_datasets() {
        for (j, sum) in sums.iter_mut().enumerate() {
            *sum += rm.row(i)[j];
        }
    }
    MeanRanks(sums.into_iter().map(|s| s / n).collect())
}

/// Friedman test over a complete result matrix at significance level `alpha`.
pub fn friedman_test(m: &ResultMatrix, alpha: Probability) -> Result<FriedmanResult> {
    if !m.is_complete() {
        return Err(Error::Analysis(
            "matrix has missing cells; apply a missing-data policy first".into(),
        ));
    }
    let rm = rank_matrix(m)?;
    friedman_from_ranks(&rm, alpha)
}

/// Friedman test straight from per-dataset ranks.
///
/// Chi-square form with the standard tie correction: with column rank sums
/// S_j and tie groups of size t within each row,
///
/// ```text
/// χ²_F = 12 · Σ_j (S_j − N(k+1)/2)² / (N·k·(k+1) − Σ(t³−t)/(k−1))
/// ```
///
/// which reduces to 12/(Nk(k+1))·ΣS_j² − 3N(k+1) in the tie-free case. A
/// fully tied matrix (denominator 0) carries no information and yields
/// statistic 0 with p = 1.
pub fn friedman_from_ranks(rm: &RankMatrix, alpha: Probability) -> Result<FriedmanResult> {
    let k = rm.k();
    let n = rm.n_datasets();
    if k < 2 {
        return Err(Error::Analysis(format!(
            "Friedman test needs at least 2 approaches, got {k}"
        )));
    }
    if n < 2 {
        return Err(Error::Analysis(format!(
            "Friedman test needs at least 2 datasets, got {n}"
        )));
    }

    let kf = k as f64;
    let nf = n as f64;
    let mut col_sums = vec![0.0; k];
    let mut tie_term = 0.0;
    for i in 0..n {
        let row = rm.row(i);
        for (j, sum) in col_sums.iter_mut().enumerate() {
            *sum += row[j];
        }
        tie_term += row_tie_correction(row);
    }

    let expected = nf * (kf + 1.0) / 2.0;
    let numerator: f64 = 12.0
        * col_sums
            .iter()
            .map(|&s| (s - expected) * (s - expected))
            .sum::<f64>();
    let denominator = nf * kf * (kf + 1.0) - tie_term / (kf - 1.0);

    let df = k - 1;
    let statistic = if denominator <= 0.0 {
        // Every row fully tied: no information.
        0.0
    } else {
        numerator / denominator
    };
    let p_value = chi_square_sf(statistic, df)?;
    Ok(FriedmanResult {
        statistic,
        df,
        p_value,
        significant: p_value.value() < alpha.value(),
    })
}

// Σ(t³ − t) over the tie groups of one rank row. Tied entries carry equal
// mid-ranks, so grouping equal rank values recovers the tie structure.
fn row_tie_correction(row: &[f64]) -> f64 {
    let mut sorted = row.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut total = 0.0;
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start;
        while end + 1 < sorted.len() && sorted[end + 1] == sorted[start] {
            end += 1;
        }
        let t = (end - start + 1) as f64;
        total += t * t * t - t;
        start = end + 1;
    }
    total
}
