//! Executable law suites over certified lattices.
//!
//! Every check here compares element identities through the cached meet and
//! join tables; grades never enter, so no tolerances apply at this layer.
//! All scans are exhaustive over the finite carrier, which makes a passing
//! verdict a proof for that instance.

use serde::Serialize;

use crate::order::BoundedFuzzyLattice;
use crate::report::DEFAULT_WITNESS_CAP;

/// Identifiers for the individual laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Law {
    /// The join bounds its arguments above and the meet bounds them below.
    MeetJoinBounding,
    /// Anything above both arguments is above their join.
    JoinIsLeastUpper,
    /// Anything below both arguments is below their meet.
    MeetIsGreatestLower,
    /// `mu(x, y) > 0` iff `x (+) y = y`.
    JoinEncodesOrder,
    /// `mu(x, y) > 0` iff `x (.) y = x`.
    MeetEncodesOrder,
    /// `mu(y, z) > 0` implies both tables move monotonically in `y`.
    MeetJoinMonotone,
    Idempotence,
    Commutativity,
    Absorption,
    Associativity,
    /// `x (.) top = x` and `x (+) bottom = x`.
    NeutralBounds,
    /// `x (.) (y (+) z) = (x (.) y) (+) (x (.) z)`.
    MeetJoinDistributive,
    /// `x (+) (y (.) z) = (x (+) y) (.) (x (+) z)`.
    JoinMeetDistributive,
    /// `(x (.) y) (+) (z (.) y) = ((x (.) y) (+) z) (.) y`.
    Modular,
    /// Positivity-preserving map.
    Monotone,
    PreservesMeet,
    PreservesJoin,
    PreservesBottom,
    PreservesTop,
    /// Exactly one bounded homomorphism from each probe.
    UniqueHomomorphism,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::MeetJoinBounding => "meet-join-bounding",
            Law::JoinIsLeastUpper => "join-is-least-upper",
            Law::MeetIsGreatestLower => "meet-is-greatest-lower",
            Law::JoinEncodesOrder => "join-encodes-order",
            Law::MeetEncodesOrder => "meet-encodes-order",
            Law::MeetJoinMonotone => "meet-join-monotone",
            Law::Idempotence => "idempotence",
            Law::Commutativity => "commutativity",
            Law::Absorption => "absorption",
            Law::Associativity => "associativity",
            Law::NeutralBounds => "neutral-bounds",
            Law::MeetJoinDistributive => "meet-over-join-distributive",
            Law::JoinMeetDistributive => "join-over-meet-distributive",
            Law::Modular => "modular",
            Law::Monotone => "monotone",
            Law::PreservesMeet => "preserves-meet",
            Law::PreservesJoin => "preserves-join",
            Law::PreservesBottom => "preserves-bottom",
            Law::PreservesTop => "preserves-top",
            Law::UniqueHomomorphism => "unique-homomorphism",
        }
    }
}

/// Verdict for a single law. Witnesses are the violating element tuples in
/// lexicographic order, truncated at the cap.
#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub law: Law,
    pub holds: bool,
    pub witnesses: Vec<Vec<usize>>,
    pub truncated: bool,
}

impl LawReport {
    pub fn new(law: Law, witnesses: Vec<Vec<usize>>, truncated: bool) -> Self {
        LawReport {
            law,
            holds: witnesses.is_empty(),
            witnesses,
            truncated,
        }
    }
}

/// A bundle of law verdicts that passes when all of them do.
#[derive(Debug, Clone, Serialize)]
pub struct LawSuiteReport {
    pub reports: Vec<LawReport>,
}

impl LawSuiteReport {
    pub fn holds(&self) -> bool {
        self.reports.iter().all(|r| r.holds)
    }

    pub fn report(&self, law: Law) -> Option<&LawReport> {
        self.reports.iter().find(|r| r.law == law)
    }
}

/// Both distributivity forms, reported separately. The two verdicts are
/// provably equivalent on any fuzzy lattice, so `forms_agree` doubles as a
/// cross-check of the tables.
#[derive(Debug, Clone, Serialize)]
pub struct DistributivityReport {
    pub meet_over_join: LawReport,
    pub join_over_meet: LawReport,
}

impl DistributivityReport {
    pub fn holds(&self) -> bool {
        self.meet_over_join.holds && self.join_over_meet.holds
    }

    pub fn forms_agree(&self) -> bool {
        self.meet_over_join.holds == self.join_over_meet.holds
    }
}

fn collect_pairs(
    l: &BoundedFuzzyLattice,
    ok: impl Fn(usize, usize) -> bool,
) -> (Vec<Vec<usize>>, bool) {
    let n = l.len();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !ok(x, y) {
                if witnesses.len() == DEFAULT_WITNESS_CAP {
                    return (witnesses, true);
                }
                witnesses.push(vec![x, y]);
            }
        }
    }
    (witnesses, false)
}

fn collect_triples(
    l: &BoundedFuzzyLattice,
    ok: impl Fn(usize, usize, usize) -> bool,
) -> (Vec<Vec<usize>>, bool) {
    let n = l.len();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !ok(x, y, z) {
                    if witnesses.len() == DEFAULT_WITNESS_CAP {
                        return (witnesses, true);
                    }
                    witnesses.push(vec![x, y, z]);
                }
            }
        }
    }
    (witnesses, false)
}

fn pair_law(l: &BoundedFuzzyLattice, law: Law, ok: impl Fn(usize, usize) -> bool) -> LawReport {
    let (witnesses, truncated) = collect_pairs(l, ok);
    LawReport::new(law, witnesses, truncated)
}

fn triple_law(
    l: &BoundedFuzzyLattice,
    law: Law,
    ok: impl Fn(usize, usize, usize) -> bool,
) -> LawReport {
    let (witnesses, truncated) = collect_triples(l, ok);
    LawReport::new(law, witnesses, truncated)
}

/// The six laws tying the order to the meet/join tables: bounding,
/// extremality, the order characterizations, and monotonicity of both
/// operations.
pub fn check_order_compatibility(l: &BoundedFuzzyLattice) -> LawSuiteReport {
    let f = l.frame();
    let reports = vec![
        pair_law(l, Law::MeetJoinBounding, |x, y| {
            let join = l.join(x, y);
            let meet = l.meet(x, y);
            f.positive(x, join) && f.positive(y, join) && f.positive(meet, x) && f.positive(meet, y)
        }),
        triple_law(l, Law::JoinIsLeastUpper, |x, y, z| {
            !(f.positive(x, z) && f.positive(y, z)) || f.positive(l.join(x, y), z)
        }),
        triple_law(l, Law::MeetIsGreatestLower, |x, y, z| {
            !(f.positive(z, x) && f.positive(z, y)) || f.positive(z, l.meet(x, y))
        }),
        pair_law(l, Law::JoinEncodesOrder, |x, y| {
            f.positive(x, y) == (l.join(x, y) == y)
        }),
        pair_law(l, Law::MeetEncodesOrder, |x, y| {
            f.positive(x, y) == (l.meet(x, y) == x)
        }),
        triple_law(l, Law::MeetJoinMonotone, |x, y, z| {
            !f.positive(y, z)
                || (f.positive(l.meet(x, y), l.meet(x, z))
                    && f.positive(l.join(x, y), l.join(x, z)))
        }),
    ];
    LawSuiteReport { reports }
}

/// The algebraic identities of the two table operations: idempotence,
/// commutativity, absorption, associativity, and the neutral bounds.
pub fn check_algebraic_laws(l: &BoundedFuzzyLattice) -> LawSuiteReport {
    let reports = vec![
        pair_law(l, Law::Idempotence, |x, _| {
            l.meet(x, x) == x && l.join(x, x) == x
        }),
        pair_law(l, Law::Commutativity, |x, y| {
            l.meet(x, y) == l.meet(y, x) && l.join(x, y) == l.join(y, x)
        }),
        pair_law(l, Law::Absorption, |x, y| {
            x == l.meet(x, l.join(x, y)) && x == l.join(x, l.meet(x, y))
        }),
        triple_law(l, Law::Associativity, |x, y, z| {
            l.meet(x, l.meet(y, z)) == l.meet(l.meet(x, y), z)
                && l.join(x, l.join(y, z)) == l.join(l.join(x, y), z)
        }),
        pair_law(l, Law::NeutralBounds, |x, _| {
            l.meet(x, l.top()) == x && l.join(x, l.bottom()) == x
        }),
    ];
    LawSuiteReport { reports }
}

/// Check both distributive identities over all triples.
pub fn check_distributive(l: &BoundedFuzzyLattice) -> DistributivityReport {
    let meet_over_join = triple_law(l, Law::MeetJoinDistributive, |x, y, z| {
        l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z))
    });
    let join_over_meet = triple_law(l, Law::JoinMeetDistributive, |x, y, z| {
        l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), l.join(x, z))
    });
    DistributivityReport {
        meet_over_join,
        join_over_meet,
    }
}

/// Check the modular identity over all triples.
pub fn check_modular(l: &BoundedFuzzyLattice) -> LawReport {
    triple_law(l, Law::Modular, |x, y, z| {
        l.join(l.meet(x, y), l.meet(z, y)) == l.meet(l.join(l.meet(x, y), z), y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{fuzzify_uniform, skeletons};
    use crate::samples;

    fn m3() -> BoundedFuzzyLattice {
        BoundedFuzzyLattice::certify(fuzzify_uniform(&skeletons::m3(), 99)).unwrap()
    }

    fn n5() -> BoundedFuzzyLattice {
        BoundedFuzzyLattice::certify(fuzzify_uniform(&skeletons::n5(), 7)).unwrap()
    }

    #[test]
    fn order_compatibility_on_worked_examples() {
        assert!(check_order_compatibility(&samples::chain4()).holds());
        assert!(check_order_compatibility(&samples::diamond4()).holds());
        assert!(check_order_compatibility(&BoundedFuzzyLattice::one_element("x")).holds());
    }

    #[test]
    fn algebraic_laws_on_worked_examples() {
        assert!(check_algebraic_laws(&samples::chain4()).holds());
        assert!(check_algebraic_laws(&samples::diamond4()).holds());
        assert!(check_algebraic_laws(&BoundedFuzzyLattice::one_element("x")).holds());
    }

    #[test]
    fn chains_and_grids_are_distributive() {
        let chain = check_distributive(&samples::chain4());
        assert!(chain.holds() && chain.forms_agree());
        // the diamond is the 2x2 grid order
        let grid = check_distributive(&samples::diamond4());
        assert!(grid.holds() && grid.forms_agree());
    }

    #[test]
    fn m3_is_modular_but_not_distributive() {
        let l = m3();
        assert!(check_modular(&l).holds);
        let dist = check_distributive(&l);
        assert!(!dist.holds());
        assert!(dist.forms_agree());
        // first witness is a triple of distinct atoms
        assert_eq!(dist.meet_over_join.witnesses[0], vec![1, 2, 3]);
    }

    #[test]
    fn n5_is_not_modular() {
        let l = n5();
        let report = check_modular(&l);
        assert!(!report.holds);
        // x = a, y = b, z = c with a < b and c incomparable to both:
        // lhs = a (+) (c (.) b) = a, rhs = (a (+) c) (.) b = b
        assert_eq!(report.witnesses[0], vec![1, 2, 3]);
        let (x, y, z) = (1, 2, 3);
        let lhs = l.join(l.meet(x, y), l.meet(z, y));
        let rhs = l.meet(l.join(l.meet(x, y), z), y);
        assert_eq!(lhs, 1); // a
        assert_eq!(rhs, 2); // b
    }

    #[test]
    fn chains_are_modular() {
        assert!(check_modular(&samples::chain4()).holds);
    }

    #[test]
    fn distributive_implies_modular_on_catalog() {
        for l in [samples::chain4(), samples::diamond4(), m3(), n5()] {
            let dist = check_distributive(&l);
            assert!(dist.forms_agree());
            if dist.holds() {
                assert!(check_modular(&l).holds);
            }
        }
    }

    #[test]
    fn product_lattice_passes_both_suites() {
        use crate::product::{direct_product, ProductOptions};
        use crate::tnorm::TNorm;
        let lattice = direct_product(
            vec![samples::chain4(), samples::diamond4()],
            TNorm::minimum(),
            &ProductOptions::default(),
        )
        .unwrap()
        .certify()
        .unwrap();
        assert!(check_order_compatibility(&lattice).holds());
        assert!(check_algebraic_laws(&lattice).holds());
    }
}
