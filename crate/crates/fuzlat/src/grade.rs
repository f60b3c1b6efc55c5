//! Membership grades: the unit interval [0, 1].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A fuzzy membership degree in [0, 1].
///
/// Construction rejects anything outside the interval (including NaN), so a
/// `Grade` can always be compared totally. Positivity tests are strict
/// (`value > 0`), with no epsilon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Grade(f64);

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("grade {0} is outside [0, 1]")]
pub struct GradeError(pub f64);

impl Grade {
    pub const ZERO: Grade = Grade(0.0);
    pub const ONE: Grade = Grade(1.0);

    pub fn new(value: f64) -> Result<Grade, GradeError> {
        if (0.0..=1.0).contains(&value) {
            // normalize -0.0 so bit-level comparisons behave
            Ok(Grade(value + 0.0))
        } else {
            Err(GradeError(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Strict positivity, the test every ordering notion here is built on.
    pub fn is_positive(self) -> bool {
        self.0 > 0.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }
}

// No NaN by construction, so equality and ordering are total.
impl Eq for Grade {}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Grade {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl TryFrom<f64> for Grade {
    type Error = GradeError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Grade::new(value)
    }
}

impl From<Grade> for f64 {
    fn from(g: Grade) -> f64 {
        g.0
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
