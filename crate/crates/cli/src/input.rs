use cdrank_core::{Direction, Error as CoreError, ResultMatrix};

use crate::config::MissingPolicy;
use crate::error::{CliError, Result};

/// A policy-applied matrix plus the names the policy removed.
#[derive(Debug, Clone)]
pub struct PolicyOutcome {
    pub matrix: ResultMatrix,
    pub dropped_approaches: Vec<String>,
    pub dropped_datasets: Vec<String>,
}

/// Parses one results file: header `dataset,<approach>,...`, one row per
/// dataset, cells are decimal numbers with `-` or the empty string marking a
/// missing value. RFC-4180 quoting applies. Errors carry the 1-based record
/// line and field index.
pub fn parse_results_csv(
    bytes: &[u8],
    source_name: &str,
    direction: Direction,
    metric: &str,
) -> Result<ResultMatrix> {
    let parse_err = |line: usize, col: usize, message: String| CliError::Parse {
        path: source_name.to_string(),
        line,
        col,
        message,
    };

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);

    let mut approaches: Vec<String> = Vec::new();
    let mut datasets: Vec<String> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut width = 0usize;
    let mut last_line = 0usize;

    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line() as usize)
                .unwrap_or(idx + 1);
            parse_err(line, 1, e.to_string())
        })?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(idx + 1);
        last_line = line;

        if idx == 0 {
            if record.get(0).map(str::trim) != Some("dataset") {
                return Err(parse_err(
                    line,
                    1,
                    format!(
                        "first header cell must be 'dataset', got '{}'",
                        record.get(0).unwrap_or("").trim()
                    ),
                ));
            }
            if record.len() < 3 {
                return Err(parse_err(
                    line,
                    record.len(),
                    format!("need at least 2 approach columns, got {}", record.len() - 1),
                ));
            }
            for (j, cell) in record.iter().enumerate().skip(1) {
                let name = cell.trim();
                if name.is_empty() {
                    return Err(parse_err(line, j + 1, "empty approach name".into()));
                }
                if approaches.iter().any(|a| a == name) {
                    return Err(parse_err(
                        line,
                        j + 1,
                        format!("duplicate approach name '{name}'"),
                    ));
                }
                approaches.push(name.to_string());
            }
            width = record.len();
            continue;
        }

        // Skip blank records (trailing newline artifacts).
        if record.len() == 1 && record.get(0).map(str::trim) == Some("") {
            continue;
        }
        if record.len() != width {
            return Err(parse_err(
                line,
                record.len().min(width),
                format!("expected {} fields, got {}", width, record.len()),
            ));
        }

        let name = record.get(0).unwrap_or("").trim();
        if name.is_empty() {
            return Err(parse_err(line, 1, "empty dataset name".into()));
        }
        if datasets.iter().any(|d| d == name) {
            return Err(parse_err(
                line,
                1,
                format!("duplicate dataset name '{name}'"),
            ));
        }
        datasets.push(name.to_string());

        for (j, cell) in record.iter().enumerate().skip(1) {
            let cell = cell.trim();
            if cell.is_empty() || cell == "-" {
                values.push(f64::NAN);
                continue;
            }
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                _ => {
                    return Err(parse_err(
                        line,
                        j + 1,
                        format!("malformed number '{cell}'"),
                    ))
                }
            }
        }
    }

    if datasets.len() < 2 {
        return Err(parse_err(
            last_line.max(1),
            1,
            format!("need at least 2 dataset rows, got {}", datasets.len()),
        ));
    }

    ResultMatrix::new(approaches, datasets, values, direction, metric).map_err(CliError::from)
}

/// Emits a matrix back to the input grammar; missing cells become `-` and
/// numbers use the shortest round-trip decimal form.
pub fn matrix_to_csv(m: &ResultMatrix) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["dataset".to_string()];
    header.extend(m.approaches().iter().cloned());
    w.write_record(&header).expect("write to Vec cannot fail");
    for (i, dataset) in m.datasets().iter().enumerate() {
        let mut row = vec![dataset.clone()];
        for &v in m.row(i) {
            row.push(if v.is_nan() { "-".into() } else { format!("{v}") });
        }
        w.write_record(&row).expect("write to Vec cannot fail");
    }
    w.into_inner().expect("flush to Vec cannot fail")
}

/// Resolves missing cells per the configured policy; the result is always a
/// complete matrix with k >= 2 and N >= 2.
pub fn apply_missing_policy(m: ResultMatrix, policy: MissingPolicy) -> Result<ResultMatrix> {
    Ok(missing_policy_outcome(m, policy)?.matrix)
}

/// Like [`apply_missing_policy`] but also reports what was dropped.
pub fn missing_policy_outcome(m: ResultMatrix, policy: MissingPolicy) -> Result<PolicyOutcome> {
    let missing = m.missing_cells();
    if missing.is_empty() {
        return Ok(PolicyOutcome {
            matrix: m,
            dropped_approaches: Vec::new(),
            dropped_datasets: Vec::new(),
        });
    }

    match policy {
        MissingPolicy::Error => {
            let cells: Vec<String> = missing
                .iter()
                .map(|&(row, col)| format!("({}, {})", m.datasets()[row], m.approaches()[col]))
                .collect();
            Err(CoreError::Data(format!(
                "{} missing cells: {}",
                cells.len(),
                cells.join(", ")
            ))
            .into())
        }
        MissingPolicy::DropApproach => {
            let mut bad = vec![false; m.k()];
            for &(_, col) in &missing {
                bad[col] = true;
            }
            let keep: Vec<usize> = (0..m.k()).filter(|&j| !bad[j]).collect();
            let dropped: Vec<String> = (0..m.k())
                .filter(|&j| bad[j])
                .map(|j| m.approaches()[j].clone())
                .collect();
            if keep.len() < 2 {
                return Err(CoreError::Analysis(format!(
                    "dropping approaches with missing cells ({}) leaves {} approaches; need at least 2",
                    dropped.join(", "),
                    keep.len()
                ))
                .into());
            }
            let approaches = keep.iter().map(|&j| m.approaches()[j].clone()).collect();
            let mut values = Vec::with_capacity(m.n_datasets() * keep.len());
            for row in 0..m.n_datasets() {
                for &j in &keep {
                    values.push(m.value(row, j));
                }
            }
            Ok(PolicyOutcome {
                matrix: ResultMatrix::new(
                    approaches,
                    m.datasets().to_vec(),
                    values,
                    m.direction(),
                    m.metric_name(),
                )?,
                dropped_approaches: dropped,
                dropped_datasets: Vec::new(),
            })
        }
        MissingPolicy::DropDataset => {
            let mut bad = vec![false; m.n_datasets()];
            for &(row, _) in &missing {
                bad[row] = true;
            }
            let keep: Vec<usize> = (0..m.n_datasets()).filter(|&i| !bad[i]).collect();
            let dropped: Vec<String> = (0..m.n_datasets())
                .filter(|&i| bad[i])
                .map(|i| m.datasets()[i].clone())
                .collect();
            if keep.len() < 2 {
                return Err(CoreError::Analysis(format!(
                    "dropping datasets with missing cells ({}) leaves {} datasets; need at least 2",
                    dropped.join(", "),
                    keep.len()
                ))
                .into());
            }
            let datasets = keep.iter().map(|&i| m.datasets()[i].clone()).collect();
            let mut values = Vec::with_capacity(keep.len() * m.k());
            for &i in &keep {
                values.extend_from_slice(m.row(i));
            }
            Ok(PolicyOutcome {
                matrix: ResultMatrix::new(
                    m.approaches().to_vec(),
                    datasets,
                    values,
                    m.direction(),
                    m.metric_name(),
                )?,
                dropped_approaches: Vec::new(),
                dropped_datasets: dropped,
            })
        }
    }
}
