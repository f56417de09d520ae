mod common;

use atkinson_core::enumerate::{forests_by_nodes, ForestTable};
use atkinson_core::forest::{
    canonicalize, ck_coproduct, ck_coproduct_by_cuts, forest_product, forest_tensor_product,
    parse_raw, Forest, ForestTensor, Tree,
};
use atkinson_core::lincomb::LinComb;
use atkinson_core::scalar::q_int;
use atkinson_core::word::Letter;
use common::forest;
use proptest::prelude::*;

type Triple = LinComb<(Forest, Forest, Forest)>;

fn left_assoc(f: &Forest) -> Triple {
    let mut out = LinComb::zero();
    for ((a, b), c) in ck_coproduct(f).iter() {
        for ((a1, a2), d) in ck_coproduct(a).iter() {
            out.add_term((a1.clone(), a2.clone(), b.clone()), c * d);
        }
    }
    out
}

fn right_assoc(f: &Forest) -> Triple {
    let mut out = LinComb::zero();
    for ((a, b), c) in ck_coproduct(f).iter() {
        for ((b1, b2), d) in ck_coproduct(b).iter() {
            out.add_term((a.clone(), b1.clone(), b2.clone()), c * d);
        }
    }
    out
}

#[test]
fn coassociative_up_to_four_nodes() {
    for f in forests_by_nodes(4, 3) {
        assert_eq!(left_assoc(&f), right_assoc(&f), "{}", f);
    }
}

#[test]
fn induction_matches_admissible_cuts() {
    for f in forests_by_nodes(5, 2) {
        assert_eq!(ck_coproduct(&f), ck_coproduct_by_cuts(&f), "{}", f);
    }
}

#[test]
fn counit_and_grading() {
    for f in forests_by_nodes(4, 3) {
        let d = ck_coproduct(&f);
        assert_eq!(d.coef(&(Forest::empty(), f.clone())), q_int(1));
        assert_eq!(d.coef(&(f.clone(), Forest::empty())), q_int(1));
        for ((a, b), c) in d.iter() {
            assert_eq!(a.norm() + b.norm(), f.norm());
            assert_eq!(a.size() + b.size(), f.size());
            assert!(*c > q_int(0));
            // The left factor is the trunk: never more trees than `f`.
            assert!(a.trees().len() <= f.trees().len());
        }
    }
}

#[test]
fn coproduct_is_multiplicative() {
    let fs = forests_by_nodes(3, 2);
    for f in &fs {
        for g in &fs {
            let lhs = ck_coproduct(&forest_product(f, g));
            let rhs = forest_tensor_product(&ck_coproduct(f), &ck_coproduct(g));
            assert_eq!(lhs, rhs, "{} {}", f, g);
        }
    }
}

#[test]
fn coproduct_of_bplus() {
    // Trunk on the left: Δ B+ = ∅ ⊗ B+ + (B+ ⊗ id) Δ.
    let one = Letter::new(2).unwrap();
    for f in forests_by_nodes(3, 2) {
        let t = Forest::single(Tree::bplus(one, f.clone()));
        let mut rhs: ForestTensor = LinComb::basis((Forest::empty(), t.clone()));
        for ((a, b), c) in ck_coproduct(&f).iter() {
            rhs.add_term(
                (Forest::single(Tree::bplus(one, a.clone())), b.clone()),
                c.clone(),
            );
        }
        assert_eq!(ck_coproduct(&t), rhs, "{}", t);
    }
}

#[test]
fn ladder_and_cherry() {
    let ladder = ck_coproduct(&forest("1(2(3))"));
    assert_eq!(ladder.len(), 4);
    assert_eq!(ladder.coef(&(forest("1(2)"), forest("3"))), q_int(1));
    assert_eq!(ladder.coef(&(forest("1"), forest("2(3)"))), q_int(1));
    let cherry = ck_coproduct(&forest("1(2,3)"));
    assert_eq!(cherry.len(), 5);
    assert_eq!(cherry.coef(&(forest("1"), forest("2 3"))), q_int(1));
}

#[test]
fn canonical_forms_are_stable() {
    let table = ForestTable::new(5);
    for f in table.all_nonempty() {
        let s = f.to_syntax();
        let again = canonicalize(&parse_raw(&s).unwrap()).unwrap();
        assert_eq!(&again, f);
        assert_eq!(again.to_syntax(), s);
    }
}

#[test]
fn table_counts_match_known_sequences() {
    // Rooted trees with n unlabeled nodes: 1, 1, 2, 4, 9.
    let t = ForestTable::by_nodes(5, 1);
    let counts: Vec<usize> = (1..=5).map(|n| t.trees_of_grade(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 9]);
    // Forests with n nodes: 1, 2, 4, 9, 20.
    let counts: Vec<usize> = (1..=5).map(|n| t.forests_of_grade(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 9, 20]);
}

fn raw_forest() -> impl Strategy<Value = String> {
    let leaf = (1u32..4).prop_map(|d| d.to_string());
    let tree = leaf.prop_recursive(3, 6, 3, |inner| {
        ((1u32..4), prop::collection::vec(inner, 1..3))
            .prop_map(|(d, kids)| format!("{}({})", d, kids.join(",")))
    });
    prop::collection::vec(tree, 1..3).prop_map(|ts| ts.join(" "))
}

proptest! {
    #[test]
    fn random_forests_coassociative(s in raw_forest()) {
        let f = forest(&s);
        prop_assume!(f.size() <= 6);
        prop_assert_eq!(left_assoc(&f), right_assoc(&f));
        prop_assert_eq!(ck_coproduct(&f), ck_coproduct_by_cuts(&f));
    }

    #[test]
    fn random_forests_round_trip(s in raw_forest()) {
        let f = forest(&s);
        prop_assert_eq!(forest(&f.to_syntax()), f);
    }
}
