//! Statistical ranking of competing approaches across benchmark datasets.
//!
//! The pipeline: per-dataset mid-ranks and average ranks, the Friedman
//! omnibus test, Nemenyi critical-distance post-hoc analysis, gap-based
//! grouping with normalized rankscores, and diagnostics that reproduce and
//! detect the legacy pitfall of bucketing on the compressed z′ scale.
//!
//! Rank orientation everywhere: higher average rank is better and the best
//! possible average rank is k.
//!
//! All operations are pure functions over immutable inputs and are safe to
//! call concurrently.

pub mod diagnostics;
pub mod distributions;
mod error;
pub mod nemenyi;
pub mod ranking;

pub use diagnostics::{
    compare_modes, detect_inconsistencies, detect_legacy_inconsistencies, InconsistencyFinding,
    ModeComparison, ModeComparisonRow,
};
pub use distributions::{
    chi_square_sf, normal_cdf, studentized_range_cdf, studentized_range_quantile, Probability,
    QuantileRequest,
};
pub use error::{Error, Result};
pub use nemenyi::{
    critical_distance, group_by_cd, legacy_pstat, legacy_three_rank, pairwise_significance,
    z_value, Grouping, LegacyRanks, NemenyiParams, PairwiseComparison,
};
pub use ranking::{
    friedman_from_ranks, friedman_test, mean_ranks, rank_matrix, rank_row, Direction,
    FriedmanResult, MeanRanks, RankMatrix, ResultMatrix,
};
