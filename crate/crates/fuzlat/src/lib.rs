//! Finite bounded fuzzy lattices and their t-norm direct products.
//!
//! A fuzzy relational frame is a finite labeled carrier with a grade matrix
//! over the unit interval. When the relation is reflexive, positivity-
//! transitive, and anti-symmetric it is a fuzzy poset; when every pair has a
//! fuzzy meet and join and the carrier has bottom and top elements it
//! certifies as a bounded fuzzy lattice. The toolkit builds such lattices,
//! realizes their direct products through triangular norms, and mechanically
//! verifies the closure laws that hold exactly when the realizing t-norm has
//! no zero divisors.
//!
//! The layers, bottom to top:
//!
//! - [`grade`], [`frame`]: grades, frames, the poset axioms;
//! - [`order`]: bounds, meets, joins, lattice certification;
//! - [`tnorm`]: the built-in operators, conformance grids, zero-divisor and
//!   nilpotence scans;
//! - [`product`]: t-norm-realized direct products with coordinatewise
//!   cross-checks;
//! - [`laws`]: exhaustive law suites (order compatibility, monoid identities,
//!   distributivity, modularity);
//! - [`morphism`]: monotone maps, bounded homomorphisms, isomorphism search,
//!   terminal-object checks;
//! - [`gen`]: seeded generators for property runs;
//! - [`verify`]: the theorem-level verification drivers;
//! - [`io`]: JSON/CSV matrix documents and tolerance-based comparison.
//!
//! Everything is an immutable value after construction and every operation
//! is a pure function, so all types are safe to share across threads.

pub mod frame;
pub mod gen;
pub mod grade;
pub mod io;
pub mod laws;
pub mod morphism;
pub mod order;
pub mod product;
pub mod report;
pub mod samples;
pub mod tnorm;
pub mod verify;

pub use frame::{Axiom, AxiomVerdict, FrameError, FuzzyRelationFrame};
pub use grade::{Grade, GradeError};
pub use order::{BoundedFuzzyLattice, LatticeCertError};
pub use product::{direct_product, ProductFrame, ProductOptions};
pub use report::{CheckItem, CheckReport, Witness};
pub use tnorm::TNorm;

#[cfg(test)]
mod thread_contracts {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn shared_types_are_send_and_sync() {
        assert_send_sync::<Grade>();
        assert_send_sync::<FuzzyRelationFrame>();
        assert_send_sync::<BoundedFuzzyLattice>();
        assert_send_sync::<TNorm>();
        assert_send_sync::<ProductFrame>();
        assert_send_sync::<CheckReport>();
        assert_send_sync::<verify::VerificationRun>();
    }
}
