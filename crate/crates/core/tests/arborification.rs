mod common;

use atkinson_core::arborification::{
    alpha, alpha_lin, antiarborify, antiarborify_by_alpha, contracted_arborify,
};
use atkinson_core::character::iota_char;
use atkinson_core::enumerate::{forests_by_nodes, ForestTable};
use atkinson_core::forest::{ck_coproduct, forest_product, Forest, Tree};
use atkinson_core::lincomb::LinComb;
use atkinson_core::models::organic::{organic_arb_closed, OrganicModel};
use atkinson_core::models::shuffle::ShuffleModel;
use atkinson_core::models::ClosedSign;
use atkinson_core::qsh::{deconcat_lin, qsh_product};
use atkinson_core::rota_baxter::Atkinson;
use atkinson_core::scalar::{q, q_int, Q};
use atkinson_core::word::Letter;
use common::{forest, linear_extensions, w};

#[test]
fn intertwines_bplus_with_prepending() {
    for f in forests_by_nodes(4, 3) {
        for d in 1..=3 {
            let letter = Letter::new(d).unwrap();
            let t = Forest::single(Tree::bplus(letter, f.clone()));
            let lhs = alpha(&t);
            let rhs = alpha(&f).map_basis(|x| x.prepend(letter));
            assert_eq!(lhs, rhs, "{} under {}", f, d);
        }
    }
}

#[test]
fn algebra_morphism() {
    let fs = forests_by_nodes(3, 2);
    for f in &fs {
        for g in &fs {
            let lhs = alpha(&forest_product(f, g));
            let a = alpha(f);
            let b = alpha(g);
            let mut rhs = LinComb::zero();
            for (u, c) in a.iter() {
                for (v, d) in b.iter() {
                    rhs = rhs + qsh_product(u, v).scale(&(c * d));
                }
            }
            assert_eq!(lhs, rhs, "{} {}", f, g);
        }
    }
}

#[test]
fn coalgebra_morphism() {
    for f in forests_by_nodes(4, 2) {
        let lhs = deconcat_lin(&alpha(&f));
        let mut rhs = LinComb::zero();
        for ((a, b), c) in ck_coproduct(&f).iter() {
            for (u, x) in alpha(a).iter() {
                for (v, y) in alpha(b).iter() {
                    rhs.add_term((u.clone(), v.clone()), c * x * y);
                }
            }
        }
        assert_eq!(lhs, rhs, "{}", f);
    }
}

#[test]
fn lengths_norms_and_linear_extensions() {
    for f in forests_by_nodes(5, 2) {
        let a = alpha(&f);
        let top: usize = a
            .iter()
            .filter(|(u, _)| u.len() == f.size())
            .map(|(_, c)| c.to_integer().try_into().unwrap_or(0usize))
            .sum();
        assert!(a
            .basis_elements()
            .all(|u| u.len() <= f.size() && u.norm() == f.norm()));
        assert_eq!(top, linear_extensions(&f), "{}", f);
    }
}

#[test]
fn alpha_is_linear() {
    let x = LinComb::basis(forest("1(2)")).scale(&q_int(3)) + LinComb::basis(forest("1 2"));
    let expected = alpha(&forest("1(2)")).scale(&q_int(3)) + alpha(&forest("1 2"));
    assert_eq!(alpha_lin(&x), expected);
}

#[test]
fn iota_arborifies_to_the_edgeless_indicator() {
    let i = contracted_arborify(&iota_char::<Q>(8));
    for f in forests_by_nodes(4, 2) {
        // Only edgeless forests contract to a single letter.
        let expected = if f.trees().iter().all(|t| t.size() == 1) {
            q_int(1)
        } else {
            q_int(0)
        };
        assert_eq!(i.eval(&f).unwrap(), expected, "{}", f);
    }
}

#[test]
fn organic_recursion_matches_alpha_route_and_closed_form() {
    let engine = Atkinson::new(OrganicModel::new());
    let fast = antiarborify(&engine, 7);
    let slow = antiarborify_by_alpha(&engine.phi_char(7));
    for f in ForestTable::new(7).all_nonempty() {
        let v = fast.eval(f).unwrap();
        assert_eq!(v, slow.eval(f).unwrap(), "{}", f);
        assert_eq!(v, organic_arb_closed(f, ClosedSign::Plain), "{}", f);
    }
}

#[test]
fn shuffle_recursion_matches_alpha_route() {
    let engine = Atkinson::new(ShuffleModel::default());
    let fast = antiarborify(&engine, 3);
    let slow = antiarborify_by_alpha(&engine.phi_char(3));
    for f in ForestTable::new(3).all_nonempty() {
        assert_eq!(fast.eval(f).unwrap(), slow.eval(f).unwrap(), "{}", f);
    }
}

#[test]
fn organic_arborified_examples() {
    let engine = Atkinson::new(OrganicModel::new());
    let arb = antiarborify(&engine, 8);
    // Ladder ω1(ω2): (ω1/(2(ω1+ω2)) − 1)(1/2 − 1).
    for (a, b) in [(1i64, 1i64), (1, 2), (3, 1)] {
        let f = forest(&format!("{}({})", a, b));
        let expected = (q(a, 2 * (a + b)) - q_int(1)) * q(-1, 2);
        assert_eq!(arb.eval(&f).unwrap(), expected);
    }
    // Single nodes multiply: (1/2)² = 1/4.
    assert_eq!(arb.eval(&forest("1 1")).unwrap(), q(1, 4));
    assert_eq!(arb.eval(&forest("1(1)")).unwrap(), q(3, 8));
    assert_eq!(arb.eval(&forest("1")).unwrap(), q(-1, 2));
    assert_eq!(
        organic_arb_closed(&forest("1"), ClosedSign::Alternating),
        q(1, 2)
    );
    assert_eq!(
        organic_arb_closed(&forest("1(1)"), ClosedSign::Alternating),
        q(3, 8)
    );
}

#[test]
fn ladders_reduce_to_words() {
    let engine = Atkinson::new(OrganicModel::new());
    let arb = antiarborify(&engine, 6);
    let phi = engine.phi_char(6);
    for word in [w(&[1, 2, 3]), w(&[2, 1]), w(&[1, 1, 1, 1])] {
        let s = word
            .values()
            .iter()
            .map(|d| format!("{}(", d))
            .collect::<String>();
        let s = format!("{}{}", &s[..s.len() - 1], ")".repeat(word.len() - 1));
        let ladder = forest(&s);
        assert_eq!(alpha(&ladder), LinComb::basis(word.clone()));
        assert_eq!(
            arb.eval(&ladder).unwrap(),
            phi.eval(&word.reversed()).unwrap()
        );
    }
}
