//! Deterministic synthetic fixtures shared by the benchmarks.

use cdrank_core::{Direction, ResultMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn padded(prefix: &str, count: usize) -> Vec<String> {
    (0..count).map(|i| format!("{prefix}{i:03}")).collect()
}

/// A complete k x n matrix of uniform values on a quarter grid, so rank
/// ties occur at a realistic rate.
pub fn synthetic_matrix(k: usize, n_datasets: usize, seed: u64) -> ResultMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..k * n_datasets)
        .map(|_| rng.gen_range(0..400) as f64 * 0.25)
        .collect();
    ResultMatrix::new(
        padded("a", k),
        padded("d", n_datasets),
        values,
        Direction::HigherIsBetter,
        "synthetic",
    )
    .expect("fixture dimensions are valid")
}

/// The same content as [`synthetic_matrix`] rendered as a results CSV, for
/// parser benchmarks.
pub fn synthetic_csv(k: usize, n_datasets: usize, seed: u64) -> String {
    let m = synthetic_matrix(k, n_datasets, seed);
    let mut out = String::from("dataset");
    for a in m.approaches() {
        out.push(',');
        out.push_str(a);
    }
    out.push('\n');
    for (d, name) in m.datasets().iter().enumerate() {
        out.push_str(name);
        for v in m.row(d) {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

/// Mean ranks on a quarter grid inside [1, k], the shape `group_by_cd`
/// consumes.
pub fn synthetic_mean_ranks(k: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| 1.0 + 0.25 * rng.gen_range(0..=4 * (k - 1)) as f64)
        .collect()
}
