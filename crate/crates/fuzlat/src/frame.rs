//! Fuzzy relational frames and the fuzzy partial-order axioms.
//!
//! A frame is a finite labeled carrier together with a dense square matrix of
//! membership grades. The three axiom checkers are exhaustive scans:
//!
//! - reflexive: `mu(x, x) = 1` exactly;
//! - transitive: `mu(x, y) > 0` and `mu(y, z) > 0` imply `mu(x, z) > 0`
//!   (positivity-propagating transitivity, not sup-min composition);
//! - anti-symmetric: `mu(x, y) > 0` and `mu(y, x) > 0` imply `x = y`.
//!
//! A frame satisfying all three is a fuzzy poset.

use serde::Serialize;
use thiserror::Error;

use crate::grade::{Grade, GradeError};
use crate::report::{CheckItem, CheckReport, Witness, DEFAULT_WITNESS_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Reflexive,
    Transitive,
    AntiSymmetric,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexive => "reflexive",
            Axiom::Transitive => "transitive",
            Axiom::AntiSymmetric => "anti-symmetric",
        }
    }
}

/// Outcome of checking one axiom. `holds` is true exactly when `witnesses`
/// is empty; witnesses are index tuples in lexicographic order, truncated at
/// the cap.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    pub witnesses: Vec<Vec<usize>>,
    pub truncated: bool,
}

impl AxiomVerdict {
    fn from_witnesses(axiom: Axiom, witnesses: Vec<Vec<usize>>, truncated: bool) -> Self {
        AxiomVerdict {
            axiom,
            holds: witnesses.is_empty(),
            witnesses,
            truncated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("a frame needs at least one element")]
    Empty,
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("matrix has {rows} rows for {expected} elements")]
    RowCountMismatch { rows: usize, expected: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("invalid grade at row {row}, column {col}: {source}")]
    BadGrade {
        row: usize,
        col: usize,
        source: GradeError,
    },
}

/// A finite carrier of labeled elements with a fuzzy relation over it.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRelationFrame {
    labels: Vec<String>,
    grades: Vec<Grade>, // row-major n x n
}

impl FuzzyRelationFrame {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, FrameError> {
        let n = labels.len();
        if n == 0 {
            return Err(FrameError::Empty);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(FrameError::DuplicateLabel(label.clone()));
            }
        }
        if rows.len() != n {
            return Err(FrameError::RowCountMismatch {
                rows: rows.len(),
                expected: n,
            });
        }
        let mut grades = Vec::with_capacity(n * n);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(FrameError::RaggedRow {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
            for (col, &value) in values.iter().enumerate() {
                let grade = Grade::new(value).map_err(|source| FrameError::BadGrade {
                    row,
                    col,
                    source,
                })?;
                grades.push(grade);
            }
        }
        Ok(FuzzyRelationFrame { labels, grades })
    }

    /// Build a frame by evaluating `f` at every index pair. The labels must
    /// already be distinct; used by the product and generator modules.
    pub fn from_fn(
        labels: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Grade,
    ) -> Result<Self, FrameError> {
        let n = labels.len();
        if n == 0 {
            return Err(FrameError::Empty);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(FrameError::DuplicateLabel(label.clone()));
            }
        }
        let mut grades = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                grades.push(f(i, j));
            }
        }
        Ok(FuzzyRelationFrame { labels, grades })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn grade(&self, i: usize, j: usize) -> Grade {
        self.grades[i * self.len() + j]
    }

    /// Strict positivity of `mu(i, j)`.
    pub fn positive(&self, i: usize, j: usize) -> bool {
        self.grade(i, j).is_positive()
    }

    /// The matrix as rows of raw values.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.grade(i, j).value()).collect())
            .collect()
    }

    pub fn check_reflexive(&self) -> AxiomVerdict {
        self.check_reflexive_capped(DEFAULT_WITNESS_CAP)
    }

    pub fn check_reflexive_capped(&self, cap: usize) -> AxiomVerdict {
        let mut witnesses = Vec::new();
        let mut truncated = false;
        for i in 0..self.len() {
            if !self.grade(i, i).is_one() {
                if witnesses.len() == cap {
                    truncated = true;
                    break;
                }
                witnesses.push(vec![i]);
            }
        }
        AxiomVerdict::from_witnesses(Axiom::Reflexive, witnesses, truncated)
    }

    pub fn check_transitive(&self) -> AxiomVerdict {
        self.check_transitive_capped(DEFAULT_WITNESS_CAP)
    }

    pub fn check_transitive_capped(&self, cap: usize) -> AxiomVerdict {
        let n = self.len();
        let mut witnesses = Vec::new();
        let mut truncated = false;
        'scan: for i in 0..n {
            for j in 0..n {
                if !self.positive(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.positive(j, k) && !self.positive(i, k) {
                        if witnesses.len() == cap {
                            truncated = true;
                            break 'scan;
                        }
                        witnesses.push(vec![i, j, k]);
                    }
                }
            }
        }
        AxiomVerdict::from_witnesses(Axiom::Transitive, witnesses, truncated)
    }

    pub fn check_antisymmetric(&self) -> AxiomVerdict {
        self.check_antisymmetric_capped(DEFAULT_WITNESS_CAP)
    }

    pub fn check_antisymmetric_capped(&self, cap: usize) -> AxiomVerdict {
        let n = self.len();
        let mut witnesses = Vec::new();
        let mut truncated = false;
        'scan: for i in 0..n {
            for j in (i + 1)..n {
                if self.positive(i, j) && self.positive(j, i) {
                    if witnesses.len() == cap {
                        truncated = true;
                        break 'scan;
                    }
                    witnesses.push(vec![i, j]);
                }
            }
        }
        AxiomVerdict::from_witnesses(Axiom::AntiSymmetric, witnesses, truncated)
    }

    /// The three axiom verdicts in order: reflexive, transitive,
    /// anti-symmetric.
    pub fn poset_verdicts(&self) -> [AxiomVerdict; 3] {
        [
            self.check_reflexive(),
            self.check_transitive(),
            self.check_antisymmetric(),
        ]
    }

    /// Aggregate report: the frame is a fuzzy poset iff all three axioms hold.
    pub fn is_fuzzy_poset(&self) -> CheckReport {
        let items = self
            .poset_verdicts()
            .into_iter()
            .map(|verdict| self.verdict_item(verdict))
            .collect();
        CheckReport::new(
            format!("fuzzy poset axioms ({} elements)", self.len()),
            items,
        )
    }

    pub fn verdict_item(&self, verdict: AxiomVerdict) -> CheckItem {
        let witnesses = verdict
            .witnesses
            .iter()
            .map(|tuple| Witness::Elements {
                indices: tuple.clone(),
                labels: tuple.iter().map(|&i| self.labels[i].clone()).collect(),
            })
            .collect();
        CheckItem {
            name: verdict.axiom.name().to_string(),
            holds: verdict.holds,
            witnesses,
            truncated: verdict.truncated,
            detail: None,
        }
    }

    /// First transitivity counterexample `(a, b, c)` with `mu(a, b) > 0`,
    /// `mu(b, c) > 0`, and `mu(a, c) = 0`, or `None` when the frame is
    /// transitive.
    ///
    /// Failing pairs `(a, c)` are scanned in lexicographic order; among the
    /// intermediate candidates for a pair, the highest index wins, i.e. the
    /// element whose leading coordinates have advanced furthest when the
    /// carrier is a product in row-major order.
    pub fn witness_intransitivity(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for c in 0..n {
                if self.positive(a, c) {
                    continue;
                }
                for b in (0..n).rev() {
                    if self.positive(a, b) && self.positive(b, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    /// Relabel and conjugate the matrix by a permutation: element `i` of the
    /// result is element `perm[i]` of the original.
    pub fn permuted(&self, perm: &[usize]) -> FuzzyRelationFrame {
        let n = self.len();
        assert_eq!(perm.len(), n, "permutation length must match the carrier");
        let labels = perm.iter().map(|&i| self.labels[i].clone()).collect();
        let mut grades = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                grades.push(self.grade(perm[i], perm[j]));
            }
        }
        FuzzyRelationFrame { labels, grades }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn frame(labels: &[&str], rows: &[&[f64]]) -> FuzzyRelationFrame {
        FuzzyRelationFrame::new(
            labels.iter().map(|s| s.to_string()).collect(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn chain4_is_reflexive() {
        assert!(samples::chain4_frame().check_reflexive().holds);
    }

    #[test]
    fn one_element_frame_satisfies_all_axioms() {
        let f = frame(&["x"], &[&[1.0]]);
        assert!(f.check_reflexive().holds);
        assert!(f.check_transitive().holds);
        assert!(f.check_antisymmetric().holds);
        assert!(f.is_fuzzy_poset().pass);
    }

    #[test]
    fn broken_diagonal_is_caught() {
        let f = frame(&["a", "b"], &[&[0.9, 0.0], &[0.0, 1.0]]);
        let verdict = f.check_reflexive();
        assert!(!verdict.holds);
        assert_eq!(verdict.witnesses, vec![vec![0]]);
    }

    #[test]
    fn chain4_is_transitive() {
        assert!(samples::chain4_frame().check_transitive().holds);
    }

    #[test]
    fn diamond4_is_antisymmetric() {
        assert!(samples::diamond4_frame().check_antisymmetric().holds);
    }

    #[test]
    fn symmetric_positive_pair_breaks_antisymmetry() {
        let f = frame(&["a", "b"], &[&[1.0, 0.5], &[0.5, 1.0]]);
        let verdict = f.check_antisymmetric();
        assert!(!verdict.holds);
        assert_eq!(verdict.witnesses, vec![vec![0, 1]]);
    }

    #[test]
    fn worked_product_frames_report_correctly() {
        assert!(samples::min_product_frame().is_fuzzy_poset().pass);
        let report = samples::lukasiewicz_product_frame().is_fuzzy_poset();
        assert!(!report.pass);
        let transitive = report.item("transitive").unwrap();
        assert!(!transitive.holds);
        // reflexivity and anti-symmetry survive the Lukasiewicz realization
        assert!(report.item("reflexive").unwrap().holds);
        assert!(report.item("anti-symmetric").unwrap().holds);
    }

    #[test]
    fn lukasiewicz_product_transitivity_witnesses() {
        let f = samples::lukasiewicz_product_frame();
        let verdict = f.check_transitive();
        assert!(!verdict.holds);
        // (w1w2, x1w2, x1x2) is among the lexicographic witnesses
        let w1w2 = f.index_of("w1w2").unwrap();
        let x1w2 = f.index_of("x1w2").unwrap();
        let x1x2 = f.index_of("x1x2").unwrap();
        assert!(verdict.witnesses.contains(&vec![w1w2, x1w2, x1x2]));
        // every witness independently falsifies the axiom
        for w in &verdict.witnesses {
            let (i, j, k) = (w[0], w[1], w[2]);
            assert!(f.positive(i, j) && f.positive(j, k) && !f.positive(i, k));
        }
    }

    #[test]
    fn intransitivity_witness_picks_documented_triple() {
        let f = samples::lukasiewicz_product_frame();
        let [a, b, c] = f.witness_intransitivity().unwrap();
        assert_eq!(
            (f.label(a), f.label(b), f.label(c)),
            ("w1w2", "x1w2", "x1x2")
        );
        assert!(samples::min_product_frame()
            .witness_intransitivity()
            .is_none());
    }

    #[test]
    fn intransitivity_witness_allows_repeated_endpoints() {
        // mu(a, a) = 0 with a related to b both ways: (a, b, a) is a
        // genuine counterexample to the implication
        let f = frame(&["a", "b"], &[&[0.0, 0.4], &[0.4, 1.0]]);
        let [x, y, z] = f.witness_intransitivity().unwrap();
        assert!(f.positive(x, y) && f.positive(y, z) && !f.positive(x, z));
        assert_eq!([x, y, z], [0, 1, 0]);
    }

    #[test]
    fn witness_cap_truncates() {
        // an antichain of positive pairs: everything related both ways
        let n = 10;
        let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let f = FuzzyRelationFrame::from_fn(labels, |_, _| Grade::new(0.5).unwrap()).unwrap();
        let verdict = f.check_antisymmetric_capped(5);
        assert!(verdict.truncated);
        assert_eq!(verdict.witnesses.len(), 5);
    }

    #[test]
    fn permuted_frame_has_same_verdicts() {
        let f = samples::diamond4_frame();
        let g = f.permuted(&[3, 1, 0, 2]);
        assert_eq!(f.is_fuzzy_poset().pass, g.is_fuzzy_poset().pass);
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(matches!(
            FuzzyRelationFrame::new(vec![], vec![]),
            Err(FrameError::Empty)
        ));
        assert!(matches!(
            FuzzyRelationFrame::new(
                vec!["a".into(), "a".into()],
                vec![vec![1.0, 0.0], vec![0.0, 1.0]]
            ),
            Err(FrameError::DuplicateLabel(_))
        ));
        assert!(matches!(
            FuzzyRelationFrame::new(vec!["a".into()], vec![vec![1.2]]),
            Err(FrameError::BadGrade { row: 0, col: 0, .. })
        ));
        assert!(matches!(
            FuzzyRelationFrame::new(vec!["a".into(), "b".into()], vec![vec![1.0, 0.0]]),
            Err(FrameError::RowCountMismatch {
                rows: 1,
                expected: 2
            })
        ));
    }
}
