//! Maps between bounded fuzzy lattices: monotone maps, bounded
//! homomorphisms, isomorphism search, and finite-scale terminal-object
//! checks.
//!
//! Homomorphism equations are table-lookup element equalities; grades are
//! never compared. In particular an isomorphism is a bijective bounded
//! homomorphism and nothing more, so two lattices with the same crisp
//! skeleton but different positive grades are isomorphic here.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::laws::{Law, LawReport, LawSuiteReport};
use crate::order::BoundedFuzzyLattice;
use crate::report::DEFAULT_WITNESS_CAP;

/// Default ceiling on carrier size for the bijection search (8! = 40320
/// candidates). Larger carriers must raise the cap explicitly.
pub const DEFAULT_ISO_CAP: usize = 8;

/// Ceiling on `|candidate| ^ |probe|` for exhaustive homomorphism
/// enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("assignment covers {assigned} of {expected} source elements")]
    NotTotal { assigned: usize, expected: usize },
    #[error("assignment targets element {target} outside the target carrier")]
    TargetOutOfRange { target: usize },
    #[error("label {0:?} is not an element of the relevant carrier")]
    UnknownLabel(String),
    #[error("carrier of {len} elements is above the search cap of {cap}")]
    CarrierTooLarge { len: usize, cap: usize },
    #[error("enumeration of {states} assignments is above the cap of {cap}")]
    EnumerationTooLarge { states: u64, cap: u64 },
    #[error("maps compose only when the middle lattices coincide")]
    NotComposable,
}

/// A total function between the carriers of two lattices.
#[derive(Debug, Clone)]
pub struct LatticeMap<'a> {
    source: &'a BoundedFuzzyLattice,
    target: &'a BoundedFuzzyLattice,
    assignment: Vec<usize>,
}

impl<'a> LatticeMap<'a> {
    pub fn new(
        source: &'a BoundedFuzzyLattice,
        target: &'a BoundedFuzzyLattice,
        assignment: Vec<usize>,
    ) -> Result<Self, MorphismError> {
        if assignment.len() != source.len() {
            return Err(MorphismError::NotTotal {
                assigned: assignment.len(),
                expected: source.len(),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(MorphismError::TargetOutOfRange { target: bad });
        }
        Ok(LatticeMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(l: &'a BoundedFuzzyLattice) -> Self {
        LatticeMap {
            source: l,
            target: l,
            assignment: (0..l.len()).collect(),
        }
    }

    /// Build from a label-to-label table, the shape the `hom` subcommand
    /// reads.
    pub fn from_labels(
        source: &'a BoundedFuzzyLattice,
        target: &'a BoundedFuzzyLattice,
        pairs: &BTreeMap<String, String>,
    ) -> Result<Self, MorphismError> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (from, to) in pairs {
            let i = source
                .frame()
                .index_of(from)
                .ok_or_else(|| MorphismError::UnknownLabel(from.clone()))?;
            let j = target
                .frame()
                .index_of(to)
                .ok_or_else(|| MorphismError::UnknownLabel(to.clone()))?;
            assignment[i] = j;
        }
        if let Some(missing) = assignment.iter().position(|&t| t == usize::MAX) {
            return Err(MorphismError::UnknownLabel(
                source.frame().label(missing).to_string(),
            ));
        }
        LatticeMap::new(source, target, assignment)
    }

    pub fn source(&self) -> &BoundedFuzzyLattice {
        self.source
    }

    pub fn target(&self) -> &BoundedFuzzyLattice {
        self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.source.len() == self.target.len()
            && self
                .assignment
                .iter()
                .all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    /// Positivity preservation: `mu(x, y) > 0` implies
    /// `mu(f(x), f(y)) > 0`. Witnesses are the violating source pairs.
    pub fn is_monotone(&self) -> LawReport {
        let n = self.source.len();
        let mut witnesses = Vec::new();
        let mut truncated = false;
        'scan: for x in 0..n {
            for y in 0..n {
                if self.source.frame().positive(x, y)
                    && !self.target.frame().positive(self.apply(x), self.apply(y))
                {
                    if witnesses.len() == DEFAULT_WITNESS_CAP {
                        truncated = true;
                        break 'scan;
                    }
                    witnesses.push(vec![x, y]);
                }
            }
        }
        LawReport::new(Law::Monotone, witnesses, truncated)
    }

    /// The four bounded-homomorphism equations, each reported separately:
    /// meet preservation, join preservation, bottom, and top.
    pub fn is_bounded_homomorphism(&self) -> LawSuiteReport {
        let n = self.source.len();
        let mut meet_witnesses = Vec::new();
        let mut join_witnesses = Vec::new();
        let mut meet_truncated = false;
        let mut join_truncated = false;
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (self.apply(x), self.apply(y));
                if self.apply(self.source.meet(x, y)) != self.target.meet(fx, fy) && !meet_truncated
                {
                    if meet_witnesses.len() == DEFAULT_WITNESS_CAP {
                        meet_truncated = true;
                    } else {
                        meet_witnesses.push(vec![x, y]);
                    }
                }
                if self.apply(self.source.join(x, y)) != self.target.join(fx, fy) && !join_truncated
                {
                    if join_witnesses.len() == DEFAULT_WITNESS_CAP {
                        join_truncated = true;
                    } else {
                        join_witnesses.push(vec![x, y]);
                    }
                }
            }
        }
        let bottom_witnesses = if self.apply(self.source.bottom()) == self.target.bottom() {
            Vec::new()
        } else {
            vec![vec![self.source.bottom()]]
        };
        let top_witnesses = if self.apply(self.source.top()) == self.target.top() {
            Vec::new()
        } else {
            vec![vec![self.source.top()]]
        };
        LawSuiteReport {
            reports: vec![
                LawReport::new(Law::PreservesMeet, meet_witnesses, meet_truncated),
                LawReport::new(Law::PreservesJoin, join_witnesses, join_truncated),
                LawReport::new(Law::PreservesBottom, bottom_witnesses, false),
                LawReport::new(Law::PreservesTop, top_witnesses, false),
            ],
        }
    }

    /// `self` followed by `g`.
    pub fn compose<'b>(&self, g: &LatticeMap<'b>) -> Result<LatticeMap<'b>, MorphismError>
    where
        'a: 'b,
    {
        if !std::ptr::eq(self.target, g.source) && self.target != g.source {
            return Err(MorphismError::NotComposable);
        }
        LatticeMap::new(
            self.source,
            g.target,
            self.assignment.iter().map(|&i| g.apply(i)).collect(),
        )
    }
}

/// Search for an isomorphism under the default carrier cap.
pub fn find_isomorphism<'a>(
    a: &'a BoundedFuzzyLattice,
    b: &'a BoundedFuzzyLattice,
) -> Result<Option<LatticeMap<'a>>, MorphismError> {
    find_isomorphism_capped(a, b, DEFAULT_ISO_CAP)
}

/// Brute-force bijection search in lexicographic order, pruned by bottom/top
/// and degree compatibility. The first bijection that passes the bounded-
/// homomorphism equations wins, so the result is deterministic.
pub fn find_isomorphism_capped<'a>(
    a: &'a BoundedFuzzyLattice,
    b: &'a BoundedFuzzyLattice,
    cap: usize,
) -> Result<Option<LatticeMap<'a>>, MorphismError> {
    if a.len() != b.len() {
        return Ok(None);
    }
    let n = a.len();
    if n > cap {
        return Err(MorphismError::CarrierTooLarge { len: n, cap });
    }
    let degree = |l: &BoundedFuzzyLattice, i: usize| -> (usize, usize) {
        let f = l.frame();
        (
            (0..n).filter(|&j| f.positive(i, j)).count(),
            (0..n).filter(|&j| f.positive(j, i)).count(),
        )
    };
    let deg_a: Vec<_> = (0..n).map(|i| degree(a, i)).collect();
    let deg_b: Vec<_> = (0..n).map(|i| degree(b, i)).collect();

    let compatible = |i: usize, j: usize| -> bool {
        deg_a[i] == deg_b[j]
            && ((i == a.bottom()) == (j == b.bottom()))
            && ((i == a.top()) == (j == b.top()))
    };

    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(a, b, &compatible, &mut assignment, &mut used, 0) {
        let map = LatticeMap::new(a, b, assignment).expect("search built a total map");
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn assign(
    a: &BoundedFuzzyLattice,
    b: &BoundedFuzzyLattice,
    compatible: &impl Fn(usize, usize) -> bool,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
    depth: usize,
) -> bool {
    let n = a.len();
    if depth == n {
        let map = LatticeMap::new(a, b, assignment.clone()).expect("total by construction");
        return map.is_bounded_homomorphism().holds();
    }
    for j in 0..n {
        if used[j] || !compatible(depth, j) {
            continue;
        }
        // prune when the tables already disagree on the assigned prefix
        let consistent = (0..depth).all(|x| {
            let fx = assignment[x];
            let image = |v: usize| -> Option<usize> {
                if v < depth {
                    Some(assignment[v])
                } else if v == depth {
                    Some(j)
                } else {
                    None // not assigned yet; the leaf check decides
                }
            };
            image(a.meet(x, depth)).is_none_or(|fm| fm == b.meet(fx, j))
                && image(a.join(x, depth)).is_none_or(|fj| fj == b.join(fx, j))
        });
        if !consistent {
            continue;
        }
        assignment[depth] = j;
        used[j] = true;
        if assign(a, b, compatible, assignment, used, depth + 1) {
            return true;
        }
        assignment[depth] = usize::MAX;
        used[j] = false;
    }
    false
}

/// Enumerate every bounded homomorphism `probe -> candidate` by exhausting
/// all assignments. Rejects requests whose state space exceeds the cap.
pub fn enumerate_bounded_homs(
    probe: &BoundedFuzzyLattice,
    candidate: &BoundedFuzzyLattice,
    cap: u64,
) -> Result<Vec<Vec<usize>>, MorphismError> {
    let states = (candidate.len() as u64)
        .checked_pow(probe.len() as u32)
        .ok_or(MorphismError::EnumerationTooLarge {
            states: u64::MAX,
            cap,
        })?;
    if states > cap {
        return Err(MorphismError::EnumerationTooLarge { states, cap });
    }
    let mut found = Vec::new();
    let mut assignment = vec![0usize; probe.len()];
    loop {
        let map =
            LatticeMap::new(probe, candidate, assignment.clone()).expect("odometer stays in range");
        if map.is_bounded_homomorphism().holds() {
            found.push(assignment.clone());
        }
        // advance the odometer
        let mut slot = probe.len();
        loop {
            if slot == 0 {
                return Ok(found);
            }
            slot -= 1;
            assignment[slot] += 1;
            if assignment[slot] < candidate.len() {
                break;
            }
            assignment[slot] = 0;
        }
    }
}

/// Finite-scale terminal-object check: `candidate` is terminal for the given
/// probes when exactly one bounded homomorphism exists from each. Witnesses
/// are `[probe_index, hom_count]` pairs.
pub fn check_terminal(
    candidate: &BoundedFuzzyLattice,
    probes: &[&BoundedFuzzyLattice],
) -> Result<LawReport, MorphismError> {
    let mut witnesses = Vec::new();
    for (index, probe) in probes.iter().enumerate() {
        let homs = enumerate_bounded_homs(probe, candidate, DEFAULT_ENUMERATION_CAP)?;
        if homs.len() != 1 {
            witnesses.push(vec![index, homs.len()]);
        }
    }
    Ok(LawReport::new(Law::UniqueHomomorphism, witnesses, false))
}
