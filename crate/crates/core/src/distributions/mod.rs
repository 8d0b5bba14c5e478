//! Special-function numerics backing the ranking statistics: normal CDF,
//! chi-square survival function, and the studentized-range distribution
//! (infinite degrees of freedom) with quantile inversion.

mod gamma;
mod normal;
mod range;

pub use gamma::chi_square_sf;
pub use normal::normal_cdf;
pub use range::{studentized_range_cdf, studentized_range_quantile};

use serde::Serialize;

use crate::error::{Error, Result};

/// A probability, guaranteed to lie in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    /// Wraps `value`, rejecting anything outside [0, 1] or non-finite.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::domain(
                "Probability::new",
                format!("probability must lie in [0, 1], got {value}"),
            ))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// One-sided complement, exact at the endpoints.
    pub fn complement(self) -> Self {
        Probability(1.0 - self.0)
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A quantile request for the studentized range: probability level plus the
/// number of means being compared.
#[derive(Debug, Clone, Copy)]
pub struct QuantileRequest {
    pub p: Probability,
    pub k: usize,
}

impl QuantileRequest {
    pub fn new(p: Probability, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::domain(
                "QuantileRequest::new",
                format!("need at least 2 means, got k = {k}"),
            ));
        }
        if p.value() <= 0.0 || p.value() >= 1.0 {
            return Err(Error::domain(
                "QuantileRequest::new",
                format!("quantile level must lie strictly inside (0, 1), got {p}"),
            ));
        }
        Ok(QuantileRequest { p, k })
    }

    pub fn resolve(self) -> Result<f64> {
        studentized_range_quantile(self.p, self.k)
    }
}
