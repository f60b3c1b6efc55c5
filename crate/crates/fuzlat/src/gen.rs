//! Deterministic, seedable generators of fuzzy posets and bounded fuzzy
//! lattices for property runs.
//!
//! Generation is two-phase: pick a crisp skeleton from a weighted catalog,
//! then fuzzify it by assigning `mu(x, x) = 1` and an independent random
//! grade to every strictly comparable pair. The positivity pattern of the
//! result equals the crisp order exactly, so lattice skeletons always
//! certify and poset skeletons always pass the axioms.
//!
//! Grades are drawn from the two-decimal lattice `{0.01, ..., 0.99}` by
//! default so serialized fixtures stay short and exact, and no monotonicity
//! along chains is imposed: transitivity only constrains positivity, and
//! free grades maximize test diversity.
//!
//! The same seed and config reproduce the same matrix bit for bit. Drawing
//! goes through a counter-based stream cipher, so trial runners can derive
//! independent substreams as `seed + trial_index`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::FuzzyRelationFrame;
use crate::grade::Grade;
use crate::order::BoundedFuzzyLattice;

pub const MAX_CARRIER: usize = 12;

/// A reflexive-transitive crisp order over `n` unlabeled points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispOrder {
    n: usize,
    le: Vec<bool>, // row-major n x n
}

impl CrispOrder {
    fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> CrispOrder {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(i, j) in pairs {
            le[i * n + j] = true;
        }
        let mut order = CrispOrder { n, le };
        order.transitive_close();
        order
    }

    fn transitive_close(&mut self) {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if self.le[i * n + k] {
                    for j in 0..n {
                        if self.le[k * n + j] {
                            self.le[i * n + j] = true;
                        }
                    }
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.n + j]
    }
}

/// Crisp skeleton constructors. Everything here returns a valid partial
/// order; the lattice-shaped ones additionally have all pairwise meets and
/// joins.
pub mod skeletons {
    use super::CrispOrder;

    /// Total order `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> CrispOrder {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        CrispOrder::from_pairs(n, &pairs)
    }

    /// Subsets of `k` atoms ordered by inclusion (the Boolean lattice 2^k).
    pub fn boolean(k: u32) -> CrispOrder {
        let n = 1usize << k;
        super::order_from_masks(&(0..n as u16).collect::<Vec<_>>())
    }

    /// The diamond: bottom, three pairwise-incomparable atoms, top. Modular
    /// but not distributive.
    pub fn m3() -> CrispOrder {
        CrispOrder::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    }

    /// The pentagon: bottom, a chain `a < b`, an incomparable `c`, top. Not
    /// modular.
    pub fn n5() -> CrispOrder {
        CrispOrder::from_pairs(5, &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)])
    }

    /// The product order on a `rows x cols` grid.
    pub fn grid(rows: usize, cols: usize) -> CrispOrder {
        let n = rows * cols;
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i / cols <= j / cols && i % cols <= j % cols {
                    pairs.push((i, j));
                }
            }
        }
        CrispOrder::from_pairs(n, &pairs)
    }

    /// Zigzag `0 < 1 > 2 < 3 > ...` (odd positions are peaks).
    pub fn fence(n: usize) -> CrispOrder {
        let mut pairs = Vec::new();
        for i in 1..n {
            if i % 2 == 1 {
                pairs.push((i - 1, i));
            } else {
                pairs.push((i, i - 1));
            }
        }
        CrispOrder::from_pairs(n, &pairs)
    }

    /// No relations beyond reflexivity.
    pub fn antichain(n: usize) -> CrispOrder {
        CrispOrder::from_pairs(n, &[])
    }
}

/// Order a family of bitmasks by inclusion.
fn order_from_masks(masks: &[u16]) -> CrispOrder {
    let n = masks.len();
    let mut le = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            le[i * n + j] = masks[i] & masks[j] == masks[i];
        }
    }
    CrispOrder { n, le }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkeletonKind {
    Chain,
    Boolean,
    M3,
    N5,
    Grid,
    /// Random meet-closed subset of a Boolean lattice containing its top;
    /// always a bounded lattice, and rich enough to contain diamonds and
    /// pentagons.
    Random,
    Fence,
    Antichain,
    RandomOrder,
}

impl SkeletonKind {
    pub fn generates_lattices(self) -> bool {
        matches!(
            self,
            SkeletonKind::Chain
                | SkeletonKind::Boolean
                | SkeletonKind::M3
                | SkeletonKind::N5
                | SkeletonKind::Grid
                | SkeletonKind::Random
        )
    }

    fn feasible_sizes(self, lo: usize, hi: usize) -> Vec<usize> {
        let all = lo..=hi;
        match self {
            SkeletonKind::Chain | SkeletonKind::RandomOrder | SkeletonKind::Antichain => {
                all.collect()
            }
            SkeletonKind::Fence => all.filter(|&n| n >= 2).collect(),
            SkeletonKind::Boolean => all.filter(|&n| n.is_power_of_two() && n <= 8).collect(),
            SkeletonKind::M3 | SkeletonKind::N5 => all.filter(|&n| n == 5).collect(),
            SkeletonKind::Grid => all
                .filter(|&n| (2..=n / 2).any(|a| n.is_multiple_of(a) && n / a >= 2))
                .collect(),
            // subset sizes are not chosen up front; any range is a target
            SkeletonKind::Random => all.collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Inclusive carrier-size bounds, within `[1, 12]`.
    pub size_range: (usize, usize),
    /// Grades for comparable pairs are drawn from this closed interval,
    /// quantized to hundredths. The lower bound must be positive.
    pub grade_range: (f64, f64),
    /// Relative weights per skeleton kind; zero-weight entries are skipped.
    pub catalog: Vec<(SkeletonKind, u32)>,
}

impl GenConfig {
    /// Full lattice catalog: chains, Boolean lattices, the diamond and
    /// pentagon, grids, and random meet-closed families.
    pub fn lattices(seed: u64) -> GenConfig {
        GenConfig {
            seed,
            size_range: (2, 6),
            grade_range: (0.01, 0.99),
            catalog: vec![
                (SkeletonKind::Chain, 2),
                (SkeletonKind::Boolean, 2),
                (SkeletonKind::M3, 1),
                (SkeletonKind::N5, 1),
                (SkeletonKind::Grid, 2),
                (SkeletonKind::Random, 2),
            ],
        }
    }

    /// Distributive skeletons only: chains, Boolean lattices, grids.
    pub fn distributive_lattices(seed: u64) -> GenConfig {
        GenConfig {
            catalog: vec![
                (SkeletonKind::Chain, 2),
                (SkeletonKind::Boolean, 2),
                (SkeletonKind::Grid, 2),
            ],
            ..GenConfig::lattices(seed)
        }
    }

    /// Modular skeletons: the distributive catalog plus the diamond.
    pub fn modular_lattices(seed: u64) -> GenConfig {
        GenConfig {
            size_range: (2, 6),
            catalog: vec![
                (SkeletonKind::Chain, 2),
                (SkeletonKind::Boolean, 2),
                (SkeletonKind::Grid, 2),
                (SkeletonKind::M3, 2),
            ],
            ..GenConfig::lattices(seed)
        }
    }

    /// Poset catalog: random orders, fences, antichains, chains.
    pub fn posets(seed: u64) -> GenConfig {
        GenConfig {
            catalog: vec![
                (SkeletonKind::RandomOrder, 3),
                (SkeletonKind::Fence, 1),
                (SkeletonKind::Antichain, 1),
                (SkeletonKind::Chain, 1),
            ],
            ..GenConfig::lattices(seed)
        }
    }

    fn validate(&self) -> Result<(u8, u8), GenError> {
        let (lo, hi) = self.size_range;
        if !(1 <= lo && lo <= hi && hi <= MAX_CARRIER) {
            return Err(GenError::BadSizeRange(lo, hi));
        }
        let (glo, ghi) = self.grade_range;
        if !(glo > 0.0 && glo <= ghi && ghi <= 1.0) {
            return Err(GenError::BadGradeRange(glo, ghi));
        }
        let lo_cents = (glo * 100.0).ceil().clamp(1.0, 100.0) as u8;
        let hi_cents = (ghi * 100.0).floor().clamp(1.0, 100.0) as u8;
        if lo_cents > hi_cents {
            return Err(GenError::BadGradeRange(glo, ghi));
        }
        if self.catalog.iter().all(|&(_, w)| w == 0) {
            return Err(GenError::EmptyCatalog);
        }
        Ok((lo_cents, hi_cents))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GenError {
    #[error("size range [{0}, {1}] must satisfy 1 <= min <= max <= 12")]
    BadSizeRange(usize, usize),
    #[error("grade range ({0}, {1}) must satisfy 0 < lo <= hi <= 1")]
    BadGradeRange(f64, f64),
    #[error("catalog has no entries with positive weight")]
    EmptyCatalog,
    #[error("no catalog skeleton fits sizes [{0}, {1}]")]
    Infeasible(usize, usize),
    #[error("skeleton kind {0:?} does not generate lattices")]
    NotALatticeKind(SkeletonKind),
}

/// Unbiased draw from `[0, bound)` by rejection; keeps the stream stable
/// without pulling in a sampling crate.
fn draw_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

fn pick_weighted(rng: &mut ChaCha8Rng, entries: &[(SkeletonKind, u32)]) -> SkeletonKind {
    let total: u64 = entries.iter().map(|&(_, w)| u64::from(w)).sum();
    let mut r = draw_below(rng, total);
    for &(kind, w) in entries {
        let w = u64::from(w);
        if r < w {
            return kind;
        }
        r -= w;
    }
    unreachable!("weights sum covered the draw")
}

/// Assign fresh labels and random two-decimal grades to a crisp skeleton.
/// Diagonal entries get 1, comparable pairs get a positive grade, everything
/// else 0, so the positivity pattern is exactly the input order.
pub fn fuzzify(
    order: &CrispOrder,
    rng: &mut ChaCha8Rng,
    lo_cents: u8,
    hi_cents: u8,
) -> FuzzyRelationFrame {
    let n = order.len();
    let labels = (0..n).map(|i| format!("e{i}")).collect();
    let span = u64::from(hi_cents - lo_cents) + 1;
    let mut grades = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let g = if i == j {
                Grade::ONE
            } else if order.le(i, j) {
                let cents = u64::from(lo_cents) + draw_below(rng, span);
                Grade::new(cents as f64 / 100.0).expect("cents stay within [0, 1]")
            } else {
                Grade::ZERO
            };
            grades.push(g);
        }
    }
    FuzzyRelationFrame::from_fn(labels, |i, j| grades[i * n + j]).expect("labels are distinct")
}

/// Fuzzify with one fixed grade for every comparable pair. Deterministic
/// helper for law tests.
pub fn fuzzify_uniform(order: &CrispOrder, cents: u8) -> FuzzyRelationFrame {
    let n = order.len();
    let labels = (0..n).map(|i| format!("e{i}")).collect();
    let grade = Grade::new(f64::from(cents) / 100.0).expect("cents within range");
    FuzzyRelationFrame::from_fn(labels, |i, j| {
        if i == j {
            Grade::ONE
        } else if order.le(i, j) {
            grade
        } else {
            Grade::ZERO
        }
    })
    .expect("labels are distinct")
}

fn build_lattice_skeleton(
    kind: SkeletonKind,
    size: usize,
    rng: &mut ChaCha8Rng,
    size_range: (usize, usize),
) -> Result<CrispOrder, GenError> {
    match kind {
        SkeletonKind::Chain => Ok(skeletons::chain(size)),
        SkeletonKind::Boolean => Ok(skeletons::boolean(size.trailing_zeros())),
        SkeletonKind::M3 => Ok(skeletons::m3()),
        SkeletonKind::N5 => Ok(skeletons::n5()),
        SkeletonKind::Grid => {
            let rows = (2..=size / 2)
                .find(|&a| size.is_multiple_of(a) && size / a >= 2)
                .expect("grid feasibility checked");
            Ok(skeletons::grid(rows, size / rows))
        }
        SkeletonKind::Random => random_meet_closed(rng, size_range),
        other => Err(GenError::NotALatticeKind(other)),
    }
}

/// Random meet-closed subset of the Boolean lattice 2^4 containing its top.
/// Meet-closure plus a top makes every such family a bounded lattice (joins
/// are meets of the common upper bounds). Retries until the size lands in
/// range.
fn random_meet_closed(
    rng: &mut ChaCha8Rng,
    (lo, hi): (usize, usize),
) -> Result<CrispOrder, GenError> {
    const K: u16 = 4;
    const TOP: u16 = (1 << K) - 1;
    for _ in 0..64 {
        let mut set = vec![TOP];
        for mask in 0..TOP {
            if draw_below(rng, 100) < 30 {
                set.push(mask);
            }
        }
        // close under pairwise intersection
        loop {
            let mut added = false;
            let snapshot = set.clone();
            for (i, &a) in snapshot.iter().enumerate() {
                for &b in &snapshot[i + 1..] {
                    let m = a & b;
                    if !set.contains(&m) {
                        set.push(m);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        if (lo..=hi).contains(&set.len()) {
            set.sort_unstable();
            return Ok(order_from_masks(&set));
        }
    }
    Err(GenError::Infeasible(lo, hi))
}

/// Generate a certified bounded fuzzy lattice.
pub fn gen_bounded_fuzzy_lattice(cfg: &GenConfig) -> Result<BoundedFuzzyLattice, GenError> {
    let (lo_cents, hi_cents) = cfg.validate()?;
    for &(kind, _) in &cfg.catalog {
        if !kind.generates_lattices() {
            return Err(GenError::NotALatticeKind(kind));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.size_range;
    let feasible: Vec<(SkeletonKind, u32)> = cfg
        .catalog
        .iter()
        .filter(|&&(kind, w)| w > 0 && !kind.feasible_sizes(lo, hi).is_empty())
        .copied()
        .collect();
    if feasible.is_empty() {
        return Err(GenError::Infeasible(lo, hi));
    }
    let kind = pick_weighted(&mut rng, &feasible);
    let sizes = kind.feasible_sizes(lo, hi);
    let size = sizes[draw_below(&mut rng, sizes.len() as u64) as usize];
    let skeleton = build_lattice_skeleton(kind, size, &mut rng, (lo, hi))?;
    let frame = fuzzify(&skeleton, &mut rng, lo_cents, hi_cents);
    Ok(BoundedFuzzyLattice::certify(frame)
        .expect("fuzzified lattice skeletons certify by construction"))
}

/// Generate a fuzzy poset (not necessarily a lattice).
pub fn gen_fuzzy_poset(cfg: &GenConfig) -> Result<FuzzyRelationFrame, GenError> {
    let (lo_cents, hi_cents) = cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.size_range;
    let feasible: Vec<(SkeletonKind, u32)> = cfg
        .catalog
        .iter()
        .filter(|&&(kind, w)| w > 0 && !kind.feasible_sizes(lo, hi).is_empty())
        .copied()
        .collect();
    if feasible.is_empty() {
        return Err(GenError::Infeasible(lo, hi));
    }
    let kind = pick_weighted(&mut rng, &feasible);
    let sizes = kind.feasible_sizes(lo, hi);
    let size = sizes[draw_below(&mut rng, sizes.len() as u64) as usize];
    let skeleton = match kind {
        SkeletonKind::Fence => skeletons::fence(size),
        SkeletonKind::Antichain => skeletons::antichain(size),
        SkeletonKind::RandomOrder => random_order(&mut rng, size),
        lattice_kind => build_lattice_skeleton(lattice_kind, size, &mut rng, (lo, hi))?,
    };
    Ok(fuzzify(&skeleton, &mut rng, lo_cents, hi_cents))
}

/// Random partial order: forward edges on a topological line, transitively
/// closed.
fn random_order(rng: &mut ChaCha8Rng, n: usize) -> CrispOrder {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if draw_below(rng, 100) < 30 {
                pairs.push((i, j));
            }
        }
    }
    CrispOrder::from_pairs(n, &pairs)
}
