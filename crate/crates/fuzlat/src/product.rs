//! T-norm-realized direct products of bounded fuzzy lattices.
//!
//! The product carrier is the Cartesian product of the factor carriers in
//! row-major order (first factor varying slowest), and the product relation
//! is the n-ary t-norm fold of the factor grades:
//!
//! ```text
//! mu_p((x1, ..., xn), (y1, ..., yn)) = T(mu_1(x1, y1), ..., mu_n(xn, yn))
//! ```
//!
//! Certification of a product runs the ordinary bound search on the product
//! relation and then cross-checks the result against the coordinatewise
//! tables declared by the construction: computed meets and joins must be the
//! tuples of factor meets and joins, and bottom/top must be the tuples of
//! factor bottoms/tops. When the realizing t-norm has no zero divisors the
//! two routes provably coincide, so a disagreement is a bug detector, not a
//! recoverable condition.
//!
//! Matrix entries are independent pure computations; construction is
//! deterministic regardless of evaluation order.

use thiserror::Error;

use crate::frame::FuzzyRelationFrame;
use crate::grade::Grade;
use crate::order::{BoundedFuzzyLattice, LatticeCertError};
use crate::tnorm::TNorm;

/// Hard ceiling on product carrier size. Exhaustive certification is
/// quartic; the default keeps a worst-case run comfortably interactive.
pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Debug, Clone)]
pub struct ProductOptions {
    /// Separator between factor labels; empty by default, matching the
    /// `w1w2` style. If empty-separator labels collide the builder falls
    /// back to `","` and records it.
    pub separator: String,
    pub size_cap: usize,
}

impl Default for ProductOptions {
    fn default() -> Self {
        ProductOptions {
            separator: String::new(),
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("a direct product needs at least one factor")]
    NoFactors,
    #[error("product carrier would have {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("product labels collide even with separator {separator:?}: {label:?}")]
    LabelCollision { separator: String, label: String },
}

#[derive(Debug, Clone, Error)]
pub enum ProductCertError {
    #[error(transparent)]
    Lattice(#[from] LatticeCertError),
    /// The order-theoretic table disagrees with the coordinatewise one.
    /// Unreachable for zero-divisor-free realizations.
    #[error(
        "{table} of ({p}, {q}) derived as {derived} but declared coordinatewise as {declared}"
    )]
    CoordinatewiseMismatch {
        table: &'static str,
        p: usize,
        q: usize,
        derived: usize,
        declared: usize,
    },
    #[error("{which} derived as {derived} but declared coordinatewise as {declared}")]
    BoundMismatch {
        which: &'static str,
        derived: usize,
        declared: usize,
    },
}

/// A built product: the factor lattices, the realizing t-norm, and the
/// product relation over the tuple carrier.
#[derive(Debug, Clone)]
pub struct ProductFrame {
    factors: Vec<BoundedFuzzyLattice>,
    tnorm: TNorm,
    frame: FuzzyRelationFrame,
    sizes: Vec<usize>,
    separator: String,
    separator_fell_back: bool,
}

/// Build the product relation over certified factors.
pub fn direct_product(
    factors: Vec<BoundedFuzzyLattice>,
    tnorm: TNorm,
    options: &ProductOptions,
) -> Result<ProductFrame, ProductError> {
    let frames: Vec<&FuzzyRelationFrame> = factors.iter().map(|l| l.frame()).collect();
    let (frame, separator, fell_back) = product_relation(&frames, &tnorm, options)?;
    let sizes = factors.iter().map(|l| l.len()).collect();
    Ok(ProductFrame {
        factors,
        tnorm,
        frame,
        sizes,
        separator,
        separator_fell_back: fell_back,
    })
}

/// Build just the product relation over arbitrary frames (they need not be
/// lattices, or even posets). This is the construction the intransitivity
/// experiments run on.
pub fn product_relation_frame(
    frames: &[FuzzyRelationFrame],
    tnorm: &TNorm,
    options: &ProductOptions,
) -> Result<FuzzyRelationFrame, ProductError> {
    let refs: Vec<&FuzzyRelationFrame> = frames.iter().collect();
    product_relation(&refs, tnorm, options).map(|(frame, _, _)| frame)
}

fn product_relation(
    frames: &[&FuzzyRelationFrame],
    tnorm: &TNorm,
    options: &ProductOptions,
) -> Result<(FuzzyRelationFrame, String, bool), ProductError> {
    if frames.is_empty() {
        return Err(ProductError::NoFactors);
    }
    let mut size = 1usize;
    for f in frames {
        size = size
            .checked_mul(f.len())
            .filter(|&s| s <= options.size_cap)
            .ok_or(ProductError::TooLarge {
                size: frames
                    .iter()
                    .fold(1usize, |acc, f| acc.saturating_mul(f.len())),
                cap: options.size_cap,
            })?;
    }
    let sizes: Vec<usize> = frames.iter().map(|f| f.len()).collect();

    let labels = match joined_labels(frames, &sizes, &options.separator) {
        Ok(labels) => (labels, options.separator.clone(), false),
        Err(_) if options.separator.is_empty() => {
            // empty-separator collision: retry with a comma
            let labels = joined_labels(frames, &sizes, ",").map_err(|label| {
                ProductError::LabelCollision {
                    separator: ",".into(),
                    label,
                }
            })?;
            (labels, ",".to_string(), true)
        }
        Err(label) => {
            return Err(ProductError::LabelCollision {
                separator: options.separator.clone(),
                label,
            })
        }
    };
    let (labels, separator, fell_back) = labels;

    let mut scratch = vec![Grade::ZERO; frames.len()];
    let frame = FuzzyRelationFrame::from_fn(labels, |p, q| {
        let mut pi = p;
        let mut qi = q;
        for axis in (0..frames.len()).rev() {
            let n = sizes[axis];
            scratch[axis] = frames[axis].grade(pi % n, qi % n);
            pi /= n;
            qi /= n;
        }
        tnorm.extend(&scratch).expect("at least one factor")
    })
    .expect("labels validated above");
    Ok((frame, separator, fell_back))
}

fn joined_labels(
    frames: &[&FuzzyRelationFrame],
    sizes: &[usize],
    separator: &str,
) -> Result<Vec<String>, String> {
    let total: usize = sizes.iter().product();
    let mut labels = Vec::with_capacity(total);
    for mut index in 0..total {
        let mut parts = vec![""; frames.len()];
        for axis in (0..frames.len()).rev() {
            parts[axis] = frames[axis].label(index % sizes[axis]);
            index /= sizes[axis];
        }
        labels.push(parts.join(separator));
    }
    for (i, label) in labels.iter().enumerate() {
        if labels[..i].contains(label) {
            return Err(label.clone());
        }
    }
    Ok(labels)
}

impl ProductFrame {
    pub fn frame(&self) -> &FuzzyRelationFrame {
        &self.frame
    }

    pub fn into_frame(self) -> FuzzyRelationFrame {
        self.frame
    }

    pub fn factors(&self) -> &[BoundedFuzzyLattice] {
        &self.factors
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn separator(&self) -> &str {
        &self.separator
    }

    pub fn separator_fell_back(&self) -> bool {
        self.separator_fell_back
    }

    /// Decompose a carrier index into per-factor indices.
    pub fn tuple_of_index(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0usize; self.sizes.len()];
        for axis in (0..self.sizes.len()).rev() {
            tuple[axis] = index % self.sizes[axis];
            index /= self.sizes[axis];
        }
        tuple
    }

    /// Compose per-factor indices into the carrier index (row-major, first
    /// factor slowest).
    pub fn index_of_tuple(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.sizes.len());
        tuple
            .iter()
            .zip(&self.sizes)
            .fold(0usize, |acc, (&i, &n)| acc * n + i)
    }

    /// The meet declared by the construction: the tuple of factor meets.
    pub fn declared_meet(&self, p: usize, q: usize) -> usize {
        let (tp, tq) = (self.tuple_of_index(p), self.tuple_of_index(q));
        let tuple: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .map(|(axis, factor)| factor.meet(tp[axis], tq[axis]))
            .collect();
        self.index_of_tuple(&tuple)
    }

    /// The join declared by the construction: the tuple of factor joins.
    pub fn declared_join(&self, p: usize, q: usize) -> usize {
        let (tp, tq) = (self.tuple_of_index(p), self.tuple_of_index(q));
        let tuple: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .map(|(axis, factor)| factor.join(tp[axis], tq[axis]))
            .collect();
        self.index_of_tuple(&tuple)
    }

    pub fn declared_bottom(&self) -> usize {
        let tuple: Vec<usize> = self.factors.iter().map(|f| f.bottom()).collect();
        self.index_of_tuple(&tuple)
    }

    pub fn declared_top(&self) -> usize {
        let tuple: Vec<usize> = self.factors.iter().map(|f| f.top()).collect();
        self.index_of_tuple(&tuple)
    }

    /// First intransitivity counterexample in the product relation, if any.
    pub fn witness_intransitivity(&self) -> Option<[usize; 3]> {
        self.frame.witness_intransitivity()
    }

    /// Certify the product relation as a bounded fuzzy lattice and
    /// cross-check the derived meet/join tables and bounds against the
    /// declared coordinatewise ones.
    pub fn certify(&self) -> Result<BoundedFuzzyLattice, ProductCertError> {
        let lattice = BoundedFuzzyLattice::certify(self.frame.clone())?;
        let n = lattice.len();
        for p in 0..n {
            for q in p..n {
                let derived = lattice.meet(p, q);
                let declared = self.declared_meet(p, q);
                if derived != declared {
                    return Err(ProductCertError::CoordinatewiseMismatch {
                        table: "meet",
                        p,
                        q,
                        derived,
                        declared,
                    });
                }
                let derived = lattice.join(p, q);
                let declared = self.declared_join(p, q);
                if derived != declared {
                    return Err(ProductCertError::CoordinatewiseMismatch {
                        table: "join",
                        p,
                        q,
                        derived,
                        declared,
                    });
                }
            }
        }
        if lattice.bottom() != self.declared_bottom() {
            return Err(ProductCertError::BoundMismatch {
                which: "bottom",
                derived: lattice.bottom(),
                declared: self.declared_bottom(),
            });
        }
        if lattice.top() != self.declared_top() {
            return Err(ProductCertError::BoundMismatch {
                which: "top",
                derived: lattice.top(),
                declared: self.declared_top(),
            });
        }
        Ok(lattice)
    }
}
