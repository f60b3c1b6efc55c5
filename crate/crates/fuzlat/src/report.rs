//! Structured pass/fail reports with concrete violation witnesses.

use serde::Serialize;

/// Cap on the number of witnesses collected per check. Keeps reports bounded
/// on large carriers; the `truncated` flag records that the list was cut.
pub const DEFAULT_WITNESS_CAP: usize = 32;

/// A concrete violation of some law or axiom.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A tuple of carrier elements, by index and by label.
    Elements {
        indices: Vec<usize>,
        labels: Vec<String>,
    },
    /// A tuple of raw grades (used by the t-norm grid checks).
    Grades { values: Vec<f64> },
}

/// One named check inside a report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckItem {
    pub fn passing(name: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            holds: true,
            witnesses: Vec::new(),
            truncated: false,
            detail: None,
        }
    }
}

/// Aggregated verdict over a list of checks. `pass` holds exactly when every
/// item does.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub pass: bool,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>, items: Vec<CheckItem>) -> Self {
        let pass = items.iter().all(|item| item.holds);
        CheckReport {
            subject: subject.into(),
            pass,
            items,
        }
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|item| item.name == name)
    }
}
