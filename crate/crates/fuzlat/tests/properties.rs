//! Property tests over generated structures: axiom equivariance, witness
//! replay, t-norm positivity propagation, product closure at the poset
//! level, serialization round-trips, and isomorphism symmetry.

use proptest::prelude::*;

use fuzlat::gen::{self, GenConfig};
use fuzlat::io::{self, MatrixDocument};
use fuzlat::morphism;
use fuzlat::order::BoundedFuzzyLattice;
use fuzlat::product::{product_relation_frame, ProductOptions};
use fuzlat::tnorm::TNorm;
use fuzlat::{FuzzyRelationFrame, Grade};

fn arb_frame() -> impl Strategy<Value = FuzzyRelationFrame> {
    // arbitrary small relation matrices, mostly not posets
    (1usize..5).prop_flat_map(|n| {
        proptest::collection::vec(
            proptest::sample::select(vec![0.0, 0.0, 0.3, 0.5, 1.0]),
            n * n,
        )
        .prop_map(move |cells| {
            let labels = (0..n).map(|i| format!("e{i}")).collect();
            let rows = cells.chunks(n).map(|c| c.to_vec()).collect();
            FuzzyRelationFrame::new(labels, rows).expect("cells are valid grades")
        })
    })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn arb_frame_with_perm() -> impl Strategy<Value = (FuzzyRelationFrame, Vec<usize>)> {
    arb_frame().prop_flat_map(|frame| {
        let n = frame.len();
        (Just(frame), arb_permutation(n))
    })
}

fn arb_lattice_with_perm() -> impl Strategy<Value = (BoundedFuzzyLattice, Vec<usize>)> {
    arb_lattice().prop_flat_map(|lattice| {
        let n = lattice.len();
        (Just(lattice), arb_permutation(n))
    })
}

fn arb_lattice() -> impl Strategy<Value = BoundedFuzzyLattice> {
    any::<u64>().prop_map(|seed| {
        gen::gen_bounded_fuzzy_lattice(&GenConfig::lattices(seed)).expect("config is valid")
    })
}

fn arb_grades(max_len: usize) -> impl Strategy<Value = Vec<Grade>> {
    proptest::collection::vec(
        (0..=100u32).prop_map(|c| Grade::new(f64::from(c) / 100.0).unwrap()),
        1..=max_len,
    )
}

proptest! {
    #[test]
    fn poset_verdict_is_permutation_equivariant((frame, perm) in arb_frame_with_perm()) {
        let permuted = frame.permuted(&perm);
        prop_assert_eq!(frame.is_fuzzy_poset().pass, permuted.is_fuzzy_poset().pass);
        prop_assert_eq!(
            frame.check_reflexive().holds,
            permuted.check_reflexive().holds
        );
        prop_assert_eq!(
            frame.check_transitive().holds,
            permuted.check_transitive().holds
        );
        prop_assert_eq!(
            frame.check_antisymmetric().holds,
            permuted.check_antisymmetric().holds
        );
    }

    #[test]
    fn every_witness_independently_falsifies_its_axiom(frame in arb_frame()) {
        let [reflexive, transitive, antisymmetric] = frame.poset_verdicts();
        for w in &reflexive.witnesses {
            prop_assert!(!frame.grade(w[0], w[0]).is_one());
        }
        for w in &transitive.witnesses {
            prop_assert!(frame.positive(w[0], w[1]));
            prop_assert!(frame.positive(w[1], w[2]));
            prop_assert!(!frame.positive(w[0], w[2]));
        }
        for w in &antisymmetric.witnesses {
            prop_assert!(w[0] != w[1]);
            prop_assert!(frame.positive(w[0], w[1]) && frame.positive(w[1], w[0]));
        }
    }

    #[test]
    fn witness_intransitivity_agrees_with_the_axiom_check(frame in arb_frame()) {
        let holds = frame.check_transitive().holds;
        match frame.witness_intransitivity() {
            Some([a, b, c]) => {
                prop_assert!(!holds);
                prop_assert!(frame.positive(a, b));
                prop_assert!(frame.positive(b, c));
                prop_assert!(!frame.positive(a, c));
            }
            None => prop_assert!(holds),
        }
    }

    #[test]
    fn zero_annihilates_every_fold(grades in arb_grades(6), pos in any::<proptest::sample::Index>()) {
        for name in ["minimum", "algebraic", "lukasiewicz", "hamacher", "hamacher-paper-nary"] {
            let t = TNorm::builtin(name).unwrap();
            let mut with_zero = grades.clone();
            let at = pos.index(with_zero.len());
            with_zero[at] = Grade::ZERO;
            prop_assert_eq!(t.extend(&with_zero).unwrap().value(), 0.0, "{}", name);
        }
    }

    #[test]
    fn zero_divisor_free_folds_preserve_positivity(grades in arb_grades(6)) {
        let positive: Vec<Grade> = grades
            .iter()
            .map(|g| if g.is_positive() { *g } else { Grade::new(0.01).unwrap() })
            .collect();
        for name in ["minimum", "algebraic", "hamacher", "hamacher-paper-nary"] {
            let t = TNorm::builtin(name).unwrap();
            prop_assert!(
                t.extend(&positive).unwrap().is_positive(),
                "{} collapsed a positive fold",
                name
            );
        }
    }

    #[test]
    fn lukasiewicz_fold_matches_its_closed_form(grades in arb_grades(6)) {
        let fold = TNorm::lukasiewicz().extend(&grades).unwrap().value();
        let sum: f64 = grades.iter().map(|g| g.value()).sum();
        let closed = (sum - (grades.len() as f64 - 1.0)).max(0.0);
        prop_assert!((fold - closed).abs() <= 1e-9);
    }

    #[test]
    fn json_and_csv_round_trips_are_identities(lattice in arb_lattice()) {
        let doc = MatrixDocument::from_frame(lattice.frame());
        let via_json = io::parse_json(&io::emit_json(&doc)).unwrap();
        prop_assert_eq!(&via_json.to_frame().unwrap(), lattice.frame());
        let via_csv = io::parse_csv(&io::emit_csv(&doc)).unwrap();
        prop_assert_eq!(&via_csv.to_frame().unwrap(), lattice.frame());
    }

    #[test]
    fn certification_is_label_permutation_equivariant((lattice, perm) in arb_lattice_with_perm()) {
        let permuted = BoundedFuzzyLattice::certify(lattice.frame().permuted(&perm))
            .expect("permuted lattice still certifies");
        // bottom and top land on the same labels
        prop_assert_eq!(
            lattice.label(lattice.bottom()),
            permuted.label(permuted.bottom())
        );
        prop_assert_eq!(lattice.label(lattice.top()), permuted.label(permuted.top()));
        // tables agree through the relabeling
        for i in 0..lattice.len() {
            for j in 0..lattice.len() {
                let (pi, pj) = (
                    permuted.frame().index_of(lattice.label(i)).unwrap(),
                    permuted.frame().index_of(lattice.label(j)).unwrap(),
                );
                prop_assert_eq!(
                    lattice.label(lattice.meet(i, j)),
                    permuted.label(permuted.meet(pi, pj))
                );
                prop_assert_eq!(
                    lattice.label(lattice.join(i, j)),
                    permuted.label(permuted.join(pi, pj))
                );
            }
        }
    }

    #[test]
    fn order_tables_characterize_positivity(lattice in arb_lattice()) {
        let f = lattice.frame();
        for i in 0..lattice.len() {
            for j in 0..lattice.len() {
                let related = f.positive(i, j);
                prop_assert_eq!(related, lattice.join(i, j) == j);
                prop_assert_eq!(related, lattice.meet(i, j) == i);
            }
        }
    }

    #[test]
    fn isomorphism_search_is_symmetric(seed_a in 0u64..500, seed_b in 0u64..500) {
        let a = gen::gen_bounded_fuzzy_lattice(&GenConfig::lattices(seed_a)).unwrap();
        let b = gen::gen_bounded_fuzzy_lattice(&GenConfig::lattices(seed_b)).unwrap();
        let ab = morphism::find_isomorphism(&a, &b).unwrap();
        let ba = morphism::find_isomorphism(&b, &a).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let (Some(ab), Some(ba)) = (ab, ba) {
            // the found witnesses need not be mutually inverse, but both
            // must be genuine isomorphisms
            prop_assert!(ab.is_bijective() && ab.is_bounded_homomorphism().holds());
            prop_assert!(ba.is_bijective() && ba.is_bounded_homomorphism().holds());
        }
    }
}

// Products of fuzzy posets under zero-divisor-free operators stay posets;
// under any built-in, reflexivity and anti-symmetry survive regardless.
#[test]
fn poset_products_behave_by_zero_divisor_status() {
    for seed in 0..60u64 {
        let a = gen::gen_fuzzy_poset(&GenConfig::posets(seed)).unwrap();
        let b = gen::gen_fuzzy_poset(&GenConfig::posets(seed.wrapping_add(1000))).unwrap();
        let frames = vec![a, b];
        for name in ["minimum", "algebraic", "hamacher"] {
            let t = TNorm::builtin(name).unwrap();
            let product = product_relation_frame(&frames, &t, &ProductOptions::default()).unwrap();
            assert!(
                product.is_fuzzy_poset().pass,
                "{name} product of posets lost an axiom at seed {seed}"
            );
        }
        let luk =
            product_relation_frame(&frames, &TNorm::lukasiewicz(), &ProductOptions::default())
                .unwrap();
        assert!(
            luk.check_reflexive().holds,
            "reflexivity must survive at seed {seed}"
        );
        assert!(
            luk.check_antisymmetric().holds,
            "anti-symmetry must survive at seed {seed}"
        );
    }
}

#[test]
fn relabeled_lattices_are_isomorphic() {
    for seed in [1u64, 5, 23, 77] {
        let a = gen::gen_bounded_fuzzy_lattice(&GenConfig::lattices(seed)).unwrap();
        let rotation: Vec<usize> = (0..a.len()).map(|i| (i + 1) % a.len()).collect();
        let b = BoundedFuzzyLattice::certify(a.frame().permuted(&rotation)).unwrap();
        let map = morphism::find_isomorphism(&a, &b)
            .unwrap()
            .expect("a relabeling is an isomorphism");
        assert!(map.is_bijective());
        assert!(map.is_bounded_homomorphism().holds());
        assert!(map.is_monotone().holds);
    }
}
