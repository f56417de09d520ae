mod common;

use atkinson_core::enumerate::words_up_to_norm;
use atkinson_core::models::organic::{organic_phi_closed, BivarPoly, OrganicModel};
use atkinson_core::models::shuffle::ShuffleModel;
use atkinson_core::models::ClosedSign;
use atkinson_core::qsh::ProductKind;
use atkinson_core::rota_baxter::checks::{
    average_axioms_check, factorization_check, multiplicativity_check, rb_check, wellbehaved_check,
    Status,
};
use atkinson_core::rota_baxter::{Atkinson, RbModel, Sampling};
use atkinson_core::scalar::{q, q_int, Tolerance, Q};
use common::w;
use serde_json::Value;

/// Organic model with `R` keeping even-degree monomials. Idempotent, but its
/// kernel is not a subalgebra, so the Rota-Baxter relation fails.
struct EvenDegree(OrganicModel);

impl RbModel for EvenDegree {
    type Elem = BivarPoly;
    type Scalar = Q;
    fn name(&self) -> String {
        "even-degree".into()
    }
    fn one(&self) -> BivarPoly {
        self.0.one()
    }
    fn zero(&self) -> BivarPoly {
        self.0.zero()
    }
    fn add(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        self.0.add(a, b)
    }
    fn neg(&self, a: &BivarPoly) -> BivarPoly {
        self.0.neg(a)
    }
    fn mul(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        self.0.mul(a, b)
    }
    fn r(&self, a: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (m, n, c) in a.terms() {
            if (m + n) % 2 == 0 {
                out.add_term(m, n, c.clone());
            }
        }
        out
    }
    fn theta(&self, a: &BivarPoly) -> BivarPoly {
        self.0.theta(a)
    }
    fn sigma(&self, a: &BivarPoly) -> BivarPoly {
        self.0.sigma(a)
    }
    fn gamma(&self) -> BivarPoly {
        self.0.gamma()
    }
    fn eval(&self, a: &BivarPoly) -> Q {
        self.0.eval(a)
    }
    fn tolerance(&self) -> Tolerance {
        Tolerance::Exact
    }
    fn elem_eq(&self, a: &BivarPoly, b: &BivarPoly) -> bool {
        a == b
    }
    fn elem_json(&self, a: &BivarPoly) -> Value {
        self.0.elem_json(a)
    }
    fn sample_elements(&self, max_grade: u64) -> Sampling<BivarPoly> {
        self.0.sample_elements(max_grade)
    }
}

#[test]
fn iterates_are_fixed_by_their_projection() {
    let engine = Atkinson::new(OrganicModel::new());
    let m = engine.model();
    for word in words_up_to_norm(6) {
        let l = engine.atkinson_left(&word).unwrap();
        let t = engine.atkinson_left_tilde(&word).unwrap();
        assert_eq!(m.r(&l), l, "{}", word);
        assert_eq!(m.r_tilde(&t), t, "{}", word);
    }
}

#[test]
fn memoized_and_direct_iterates_agree() {
    let organic = Atkinson::new(OrganicModel::new());
    for word in words_up_to_norm(6) {
        for tilde in [false, true] {
            let a = if tilde {
                organic.atkinson_left_tilde(&word)
            } else {
                organic.atkinson_left(&word)
            };
            assert_eq!(a.unwrap(), organic.iterate_direct(&word, tilde).unwrap());
        }
    }
    let shuffle = Atkinson::new(ShuffleModel::default());
    for word in words_up_to_norm(3) {
        assert_eq!(
            shuffle.atkinson_left(&word).unwrap(),
            shuffle.iterate_direct(&word, false).unwrap()
        );
    }
}

#[test]
fn state_is_consistent() {
    let engine = Atkinson::new(OrganicModel::new());
    let word = w(&[1, 2, 1]);
    let s = engine.state(&word).unwrap();
    assert_eq!(s.left.len(), 4);
    assert_eq!(s.right.len(), 4);
    assert_eq!(s.left[3], engine.atkinson_left(&word).unwrap());
    assert_eq!(s.tilde[2], engine.atkinson_left_tilde(&w(&[1, 2])).unwrap());
    assert_eq!(s.right[3], BivarPoly::one());
    assert!(engine.atkinson_left(&w(&[])).is_err());
}

#[test]
fn organic_phi_values() {
    let engine = Atkinson::new(OrganicModel::new());
    let phi = engine.phi_char(8);
    assert_eq!(phi.eval(&w(&[])).unwrap(), q_int(1));
    assert_eq!(phi.eval(&w(&[1])).unwrap(), q(-1, 2));
    assert_eq!(phi.eval(&w(&[3])).unwrap(), q(-1, 2));
    assert_eq!(phi.eval(&w(&[1, 1])).unwrap(), q(3, 8));
    assert_eq!(phi.eval(&w(&[2, 1])).unwrap(), q(5, 12));
    assert_eq!(
        organic_phi_closed(&w(&[1]), ClosedSign::Alternating).unwrap(),
        q(1, 2)
    );
    assert_eq!(
        organic_phi_closed(&w(&[2, 1]), ClosedSign::Alternating).unwrap(),
        q(5, 12)
    );
    assert!(phi.eval(&w(&[9])).is_err());
}

#[test]
fn organic_suites_pass() {
    let engine = Atkinson::new(OrganicModel::new());
    let mut report = average_axioms_check(&engine, usize::MAX, 6, 6);
    report.extend(factorization_check(&engine, 6));
    report.extend(wellbehaved_check(&engine, 6));
    report.extend(multiplicativity_check(
        &engine,
        6,
        ProductKind::QuasiShuffle,
    ));
    for e in &report.entries {
        assert_eq!(e.status, Status::Pass, "{}: {}", e.axiom, e.witness);
        assert!(e.checked > 0, "{}", e.axiom);
    }
}

#[test]
fn shuffle_suites_pass_and_phi_is_not_a_shuffle_character() {
    let engine = Atkinson::new(ShuffleModel::default());
    let mut report = average_axioms_check(&engine, usize::MAX, 3, 3);
    report.extend(factorization_check(&engine, 3));
    report.extend(multiplicativity_check(
        &engine,
        4,
        ProductKind::QuasiShuffle,
    ));
    assert!(report.passed(), "{}", report.to_json());
    let sh = multiplicativity_check(&engine, 2, ProductKind::Shuffle);
    assert!(!sh.passed());
}

#[test]
fn broken_operator_is_caught_with_a_witness() {
    let engine = Atkinson::new(EvenDegree(OrganicModel::new()));
    let report = rb_check(&engine, 20, 4);
    let rb = report.entry("rota-baxter relation").unwrap();
    assert_eq!(rb.status, Status::Fail);
    assert!(rb.witness.get("x").is_some());
    assert_eq!(report.entry("idempotency").unwrap().status, Status::Pass);
    assert!(!average_axioms_check(&engine, 20, 4, 2).passed());
}

#[test]
fn report_json_shape() {
    let engine = Atkinson::new(OrganicModel::new());
    let r = rb_check(&engine, 5, 2);
    let j = r.to_json();
    assert_eq!(j["model"], "organic");
    assert!(j["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["status"] == "pass"));
}
