//! Fuzzy bounds, meets, joins, and bounded-lattice certification.
//!
//! All searches follow the definitions directly: a fuzzy lower bound of a
//! subset is an element positively related to every member, the fuzzy meet is
//! a lower bound positively above every other lower bound, and dually for
//! joins. Meets and joins are unique on a fuzzy poset because anti-symmetry
//! collapses any two candidates.

use thiserror::Error;

use crate::frame::FuzzyRelationFrame;
use crate::grade::Grade;
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bound queries need a nonempty subset")]
    EmptySubset,
    #[error("element index {0} is out of range")]
    IndexOutOfRange(usize),
}

/// Elements positively below every member of `subset`, ascending.
pub fn lower_bounds(
    frame: &FuzzyRelationFrame,
    subset: &[usize],
) -> Result<Vec<usize>, BoundsError> {
    bounds(frame, subset, |frame, x, y| frame.positive(x, y))
}

/// Elements positively above every member of `subset`, ascending.
pub fn upper_bounds(
    frame: &FuzzyRelationFrame,
    subset: &[usize],
) -> Result<Vec<usize>, BoundsError> {
    bounds(frame, subset, |frame, x, y| frame.positive(y, x))
}

fn bounds(
    frame: &FuzzyRelationFrame,
    subset: &[usize],
    related: impl Fn(&FuzzyRelationFrame, usize, usize) -> bool,
) -> Result<Vec<usize>, BoundsError> {
    if subset.is_empty() {
        return Err(BoundsError::EmptySubset);
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= frame.len()) {
        return Err(BoundsError::IndexOutOfRange(bad));
    }
    Ok((0..frame.len())
        .filter(|&x| subset.iter().all(|&y| related(frame, x, y)))
        .collect())
}

/// Why a pairwise meet or join could not be produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BoundFailure {
    #[error("no such bound exists")]
    Missing,
    /// Two distinct elements both qualify as the extremal bound. Impossible
    /// on an anti-symmetric frame; seeing this means the input was not a
    /// fuzzy poset.
    #[error("elements {0} and {1} both qualify as the extremal bound")]
    Ambiguous(usize, usize),
}

/// Greatest fuzzy lower bound of `{i, j}`.
///
/// The frame must be a fuzzy poset; on arbitrary frames the `Ambiguous`
/// failure can surface.
pub fn fuzzy_meet(frame: &FuzzyRelationFrame, i: usize, j: usize) -> Result<usize, BoundFailure> {
    let lb = lower_bounds(frame, &[i, j]).expect("pair is a valid subset");
    extremal(frame, &lb, |frame, x, y| frame.positive(x, y))
}

/// Least fuzzy upper bound of `{i, j}`.
pub fn fuzzy_join(frame: &FuzzyRelationFrame, i: usize, j: usize) -> Result<usize, BoundFailure> {
    let ub = upper_bounds(frame, &[i, j]).expect("pair is a valid subset");
    extremal(frame, &ub, |frame, x, y| frame.positive(y, x))
}

/// Find the element of `candidates` that every other candidate relates to
/// under `toward` (for meets: everyone positively below it; for joins,
/// dually).
///
/// Single upward pass, then a verification sweep against the definition: on
/// an anti-symmetric frame the pass lands on the extremal element whenever
/// one exists. A second qualifying candidate would have to relate to the
/// first both ways, so the uniqueness sweep is linear too.
fn extremal(
    frame: &FuzzyRelationFrame,
    candidates: &[usize],
    toward: impl Fn(&FuzzyRelationFrame, usize, usize) -> bool,
) -> Result<usize, BoundFailure> {
    let (&first, rest) = match candidates.split_first() {
        None => return Err(BoundFailure::Missing),
        Some(split) => split,
    };
    let mut best = first;
    for &x in rest {
        if toward(frame, best, x) {
            best = x;
        }
    }
    if !candidates.iter().all(|&x| toward(frame, x, best)) {
        return Err(BoundFailure::Missing);
    }
    if let Some(&other) = candidates
        .iter()
        .find(|&&x| x != best && toward(frame, best, x))
    {
        return Err(BoundFailure::Ambiguous(best, other));
    }
    Ok(best)
}

#[derive(Debug, Clone, Error)]
pub enum LatticeCertError {
    #[error("frame fails the fuzzy poset axioms")]
    NotPoset { report: CheckReport },
    #[error("no fuzzy meet for {label_a:?} and {label_b:?}")]
    MissingMeet {
        a: usize,
        b: usize,
        label_a: String,
        label_b: String,
    },
    #[error("no fuzzy join for {label_a:?} and {label_b:?}")]
    MissingJoin {
        a: usize,
        b: usize,
        label_a: String,
        label_b: String,
    },
    /// Anti-symmetry was verified yet two extremal candidates turned up;
    /// this indicates a defect in the caller or in this crate, never valid
    /// input.
    #[error(
        "internal inconsistency: elements {first} and {second} both extremal for pair ({a}, {b})"
    )]
    AmbiguousBound {
        a: usize,
        b: usize,
        first: usize,
        second: usize,
    },
    /// For each element, a witness pair showing why it is not the bottom.
    #[error("no bottom element")]
    NoBottom { blockers: Vec<(usize, usize)> },
    #[error("no top element")]
    NoTop { blockers: Vec<(usize, usize)> },
}

impl LatticeCertError {
    pub fn kind(&self) -> &'static str {
        match self {
            LatticeCertError::NotPoset { .. } => "NotPoset",
            LatticeCertError::MissingMeet { .. } => "MissingMeet",
            LatticeCertError::MissingJoin { .. } => "MissingJoin",
            LatticeCertError::AmbiguousBound { .. } => "AmbiguousBound",
            LatticeCertError::NoBottom { .. } => "NoBottom",
            LatticeCertError::NoTop { .. } => "NoTop",
        }
    }
}

/// A certified bounded fuzzy lattice: a fuzzy poset together with cached
/// pairwise meet/join tables and its bottom and top elements.
///
/// Instances are immutable; everything here is a table lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedFuzzyLattice {
    frame: FuzzyRelationFrame,
    meet: Vec<usize>, // row-major n x n, symmetric
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl BoundedFuzzyLattice {
    /// Verify the poset axioms, compute the full meet and join tables by
    /// exhaustive bound search, and locate bottom and top. All-or-nothing.
    pub fn certify(frame: FuzzyRelationFrame) -> Result<Self, LatticeCertError> {
        let report = frame.is_fuzzy_poset();
        if !report.pass {
            return Err(LatticeCertError::NotPoset { report });
        }
        let n = frame.len();
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for i in 0..n {
            for j in i..n {
                let m = fuzzy_meet(&frame, i, j).map_err(|failure| match failure {
                    BoundFailure::Missing => LatticeCertError::MissingMeet {
                        a: i,
                        b: j,
                        label_a: frame.label(i).to_string(),
                        label_b: frame.label(j).to_string(),
                    },
                    BoundFailure::Ambiguous(first, second) => LatticeCertError::AmbiguousBound {
                        a: i,
                        b: j,
                        first,
                        second,
                    },
                })?;
                let jn = fuzzy_join(&frame, i, j).map_err(|failure| match failure {
                    BoundFailure::Missing => LatticeCertError::MissingJoin {
                        a: i,
                        b: j,
                        label_a: frame.label(i).to_string(),
                        label_b: frame.label(j).to_string(),
                    },
                    BoundFailure::Ambiguous(first, second) => LatticeCertError::AmbiguousBound {
                        a: i,
                        b: j,
                        first,
                        second,
                    },
                })?;
                meet[i * n + j] = m;
                meet[j * n + i] = m;
                join[i * n + j] = jn;
                join[j * n + i] = jn;
            }
        }
        let bottom = extreme_element(&frame, |frame, cand, x| frame.positive(cand, x))
            .map_err(|blockers| LatticeCertError::NoBottom { blockers })?;
        let top = extreme_element(&frame, |frame, cand, x| frame.positive(x, cand))
            .map_err(|blockers| LatticeCertError::NoTop { blockers })?;
        Ok(BoundedFuzzyLattice {
            frame,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The one-element bounded fuzzy lattice: `mu(x, x) = 1`, bottom and top
    /// coincide, and both tables are trivial.
    pub fn one_element(label: impl Into<String>) -> Self {
        let frame = FuzzyRelationFrame::from_fn(vec![label.into()], |_, _| Grade::ONE)
            .expect("single label is valid");
        BoundedFuzzyLattice {
            frame,
            meet: vec![0],
            join: vec![0],
            bottom: 0,
            top: 0,
        }
    }

    pub fn frame(&self) -> &FuzzyRelationFrame {
        &self.frame
    }

    pub fn into_frame(self) -> FuzzyRelationFrame {
        self.frame
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, i: usize) -> &str {
        self.frame.label(i)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet of a nonempty subset, folded through the pairwise table.
    pub fn meet_all(&self, subset: &[usize]) -> Result<usize, BoundsError> {
        fold_table(subset, |a, b| self.meet(a, b))
    }

    pub fn join_all(&self, subset: &[usize]) -> Result<usize, BoundsError> {
        fold_table(subset, |a, b| self.join(a, b))
    }
}

fn fold_table(subset: &[usize], op: impl Fn(usize, usize) -> usize) -> Result<usize, BoundsError> {
    let (&first, rest) = subset.split_first().ok_or(BoundsError::EmptySubset)?;
    Ok(rest.iter().fold(first, |acc, &x| op(acc, x)))
}

/// Find the unique element related to every other under `toward`, or collect
/// one blocking pair per element. Anti-symmetry makes two successes
/// impossible, so that case is asserted.
fn extreme_element(
    frame: &FuzzyRelationFrame,
    toward: impl Fn(&FuzzyRelationFrame, usize, usize) -> bool,
) -> Result<usize, Vec<(usize, usize)>> {
    let n = frame.len();
    let mut found: Option<usize> = None;
    let mut blockers = Vec::new();
    for cand in 0..n {
        match (0..n).find(|&x| !toward(frame, cand, x)) {
            None => {
                assert!(
                    found.is_none(),
                    "two extreme elements on an anti-symmetric frame"
                );
                found = Some(cand);
            }
            Some(x) => blockers.push((cand, x)),
        }
    }
    found.ok_or(blockers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn idx(frame: &FuzzyRelationFrame, label: &str) -> usize {
        frame.index_of(label).unwrap()
    }

    #[test]
    fn chain4_lower_bounds_of_inner_pair() {
        let f = samples::chain4_frame();
        let subset = [idx(&f, "x1"), idx(&f, "y1")];
        assert_eq!(lower_bounds(&f, &subset).unwrap(), vec![0, 1]); // {w1, x1}
    }

    #[test]
    fn diamond4_bounds_of_incomparable_pair() {
        let f = samples::diamond4_frame();
        let subset = [idx(&f, "x2"), idx(&f, "y2")];
        assert_eq!(lower_bounds(&f, &subset).unwrap(), vec![0]); // {w2}
        assert_eq!(upper_bounds(&f, &subset).unwrap(), vec![3]); // {z2}
    }

    #[test]
    fn chain4_upper_bounds_of_extremes() {
        let f = samples::chain4_frame();
        let subset = [idx(&f, "w1"), idx(&f, "z1")];
        assert_eq!(upper_bounds(&f, &subset).unwrap(), vec![3]); // {z1}
    }

    #[test]
    fn singleton_bounds_contain_the_element() {
        let f = samples::diamond4_frame();
        for i in 0..f.len() {
            assert!(lower_bounds(&f, &[i]).unwrap().contains(&i));
            assert!(upper_bounds(&f, &[i]).unwrap().contains(&i));
        }
    }

    #[test]
    fn empty_subset_rejected() {
        let f = samples::chain4_frame();
        assert_eq!(lower_bounds(&f, &[]), Err(BoundsError::EmptySubset));
        assert_eq!(upper_bounds(&f, &[]), Err(BoundsError::EmptySubset));
    }

    #[test]
    fn diamond4_meet_and_join_of_atoms() {
        let f = samples::diamond4_frame();
        let (x2, y2) = (idx(&f, "x2"), idx(&f, "y2"));
        assert_eq!(fuzzy_meet(&f, x2, y2), Ok(0)); // w2
        assert_eq!(fuzzy_join(&f, x2, y2), Ok(3)); // z2
    }

    #[test]
    fn chain4_meets_and_joins_follow_the_chain() {
        let f = samples::chain4_frame();
        let (x1, y1) = (idx(&f, "x1"), idx(&f, "y1"));
        assert_eq!(fuzzy_meet(&f, x1, y1), Ok(x1));
        assert_eq!(fuzzy_join(&f, x1, y1), Ok(y1));
    }

    #[test]
    fn subset_folds_use_the_pairwise_tables() {
        let l = BoundedFuzzyLattice::certify(samples::diamond4_frame()).unwrap();
        assert_eq!(l.meet_all(&[1, 2, 3]).unwrap(), 0); // x2, y2, z2 meet at w2
        assert_eq!(l.join_all(&[0, 1, 2]).unwrap(), 3); // w2, x2, y2 join at z2
        assert_eq!(l.meet_all(&[2]).unwrap(), 2);
        assert_eq!(l.meet_all(&[]), Err(BoundsError::EmptySubset));
    }

    #[test]
    fn meet_and_join_are_idempotent() {
        let f = samples::diamond4_frame();
        for i in 0..f.len() {
            assert_eq!(fuzzy_meet(&f, i, i), Ok(i));
            assert_eq!(fuzzy_join(&f, i, i), Ok(i));
        }
    }

    #[test]
    fn certify_worked_examples() {
        let chain = BoundedFuzzyLattice::certify(samples::chain4_frame()).unwrap();
        assert_eq!(chain.label(chain.bottom()), "w1");
        assert_eq!(chain.label(chain.top()), "z1");

        let diamond = BoundedFuzzyLattice::certify(samples::diamond4_frame()).unwrap();
        assert_eq!(diamond.label(diamond.bottom()), "w2");
        assert_eq!(diamond.label(diamond.top()), "z2");
        // tables are symmetric
        for i in 0..diamond.len() {
            for j in 0..diamond.len() {
                assert_eq!(diamond.meet(i, j), diamond.meet(j, i));
                assert_eq!(diamond.join(i, j), diamond.join(j, i));
            }
        }
    }

    #[test]
    fn peak_fence_has_no_meet_for_the_feet() {
        // a < b, c < b: the feet have no common lower bound
        let f = FuzzyRelationFrame::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![1.0, 0.5, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.7, 1.0],
            ],
        )
        .unwrap();
        match BoundedFuzzyLattice::certify(f) {
            Err(LatticeCertError::MissingMeet { a: 0, b: 2, .. }) => {}
            other => panic!("expected MissingMeet(a, c), got {other:?}"),
        }
    }

    #[test]
    fn valley_fence_has_no_join_for_the_ends() {
        // a > b < c: the ends have no common upper bound
        let f = FuzzyRelationFrame::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![1.0, 0.0, 0.0],
                vec![0.5, 1.0, 0.7],
                vec![0.0, 0.0, 1.0],
            ],
        )
        .unwrap();
        match BoundedFuzzyLattice::certify(f) {
            Err(LatticeCertError::MissingJoin { a: 0, b: 2, .. }) => {}
            other => panic!("expected MissingJoin(a, c), got {other:?}"),
        }
    }

    #[test]
    fn direct_meet_on_a_symmetric_frame_reports_ambiguity() {
        // two order-equivalent elements; fuzzy_meet's poset precondition is
        // violated and the ambiguity surfaces instead of a silent pick
        let f = FuzzyRelationFrame::new(
            vec!["a".into(), "b".into()],
            vec![vec![1.0, 0.5], vec![0.5, 1.0]],
        )
        .unwrap();
        assert!(matches!(
            fuzzy_meet(&f, 0, 1),
            Err(BoundFailure::Ambiguous(..))
        ));
        assert!(matches!(
            fuzzy_join(&f, 0, 1),
            Err(BoundFailure::Ambiguous(..))
        ));
    }

    #[test]
    fn non_poset_is_rejected_before_table_building() {
        let f = FuzzyRelationFrame::new(
            vec!["a".into(), "b".into()],
            vec![vec![1.0, 0.5], vec![0.5, 1.0]],
        )
        .unwrap();
        assert!(matches!(
            BoundedFuzzyLattice::certify(f),
            Err(LatticeCertError::NotPoset { .. })
        ));
    }

    #[test]
    fn one_element_lattice_is_trivially_bounded() {
        let l = BoundedFuzzyLattice::one_element("x");
        assert_eq!(l.len(), 1);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 0);
        assert_eq!(l.meet(0, 0), 0);
        assert_eq!(l.join(0, 0), 0);
        // and it certifies from its own frame
        assert!(BoundedFuzzyLattice::certify(l.frame().clone()).is_ok());
    }

    #[test]
    fn order_characterizes_tables() {
        // mu(i, j) > 0 iff join(i, j) = j iff meet(i, j) = i
        for l in [samples::chain4(), samples::diamond4()] {
            for i in 0..l.len() {
                for j in 0..l.len() {
                    let related = l.frame().positive(i, j);
                    assert_eq!(related, l.join(i, j) == j);
                    assert_eq!(related, l.meet(i, j) == i);
                }
            }
        }
    }
}
