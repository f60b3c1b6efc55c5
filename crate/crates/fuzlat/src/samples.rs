//! Small worked examples used across the test suites and as seeds for the
//! verification drivers: a fuzzy four-element chain, a fuzzy four-element
//! diamond, and their direct products under the minimum and Lukasiewicz
//! t-norms. The same matrices ship as fixture files for the I/O layer.

use crate::frame::FuzzyRelationFrame;
use crate::order::BoundedFuzzyLattice;
use crate::product::{direct_product, ProductOptions};
use crate::tnorm::TNorm;

fn frame(labels: &[&str], rows: &[[f64; 4]; 4]) -> FuzzyRelationFrame {
    FuzzyRelationFrame::new(
        labels.iter().map(|s| s.to_string()).collect(),
        rows.iter().map(|r| r.to_vec()).collect(),
    )
    .expect("sample matrix is well formed")
}

/// Chain w1 < x1 < y1 < z1 with assorted positive grades.
pub fn chain4_frame() -> FuzzyRelationFrame {
    frame(
        &["w1", "x1", "y1", "z1"],
        &[
            [1.0, 0.1, 0.4, 0.8],
            [0.0, 1.0, 0.2, 0.5],
            [0.0, 0.0, 1.0, 0.3],
            [0.0, 0.0, 0.0, 1.0],
        ],
    )
}

/// Diamond with bottom w2, incomparable x2 and y2, top z2.
pub fn diamond4_frame() -> FuzzyRelationFrame {
    frame(
        &["w2", "x2", "y2", "z2"],
        &[
            [1.0, 0.1, 0.3, 0.9],
            [0.0, 1.0, 0.0, 0.6],
            [0.0, 0.0, 1.0, 0.4],
            [0.0, 0.0, 0.0, 1.0],
        ],
    )
}

pub fn chain4() -> BoundedFuzzyLattice {
    BoundedFuzzyLattice::certify(chain4_frame()).expect("chain4 certifies")
}

pub fn diamond4() -> BoundedFuzzyLattice {
    BoundedFuzzyLattice::certify(diamond4_frame()).expect("diamond4 certifies")
}

/// The 16-element direct minimum product of [`chain4`] and [`diamond4`].
pub fn min_product_frame() -> FuzzyRelationFrame {
    direct_product(
        vec![chain4(), diamond4()],
        TNorm::minimum(),
        &ProductOptions::default(),
    )
    .expect("product fits the default size cap")
    .into_frame()
}

/// The 16-element direct Lukasiewicz product of [`chain4`] and [`diamond4`];
/// not transitive, hence not a fuzzy poset.
pub fn lukasiewicz_product_frame() -> FuzzyRelationFrame {
    direct_product(
        vec![chain4(), diamond4()],
        TNorm::lukasiewicz(),
        &ProductOptions::default(),
    )
    .expect("product fits the default size cap")
    .into_frame()
}
