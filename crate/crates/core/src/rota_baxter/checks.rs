//! Verifiers for the Rota-Baxter relation, the average-algebra axioms, the
//! well-behaved axioms and the factorization identities.
//!
//! Every check reports failures as entries; none of them return errors.

use serde::Serialize;
use serde_json::{json, Value};

use crate::character::{conv_inverse, convolve, iota_char};
use crate::enumerate::{words_up_to_norm, ForestTable};
use crate::qsh::{product, ProductKind};
use crate::scalar::Scalar;
use crate::word::Word;

use super::{Atkinson, RbModel, Sampling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub axiom: String,
    pub status: Status,
    /// First counterexample found, `null` on success.
    pub witness: Value,
    pub checked: usize,
}

impl CheckEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub model: String,
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new(model: impl Into<String>) -> Self {
        Report {
            model: model.into(),
            entries: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(CheckEntry::passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn entry(&self, axiom: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Counts cases and keeps the first failure.
struct Tally {
    axiom: String,
    checked: usize,
    witness: Option<Value>,
}

impl Tally {
    fn new(axiom: &str) -> Self {
        Tally {
            axiom: axiom.into(),
            checked: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self, report: &mut Report) {
        report.entries.push(CheckEntry {
            axiom: self.axiom,
            status: if self.witness.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            witness: self.witness.unwrap_or(Value::Null),
            checked: self.checked,
        });
    }
}

/// Atkinson iterates and `a(ω)` for all words with norm at most `max_grade`.
pub fn reachable_elements<M: RbModel>(engine: &Atkinson<M>, max_grade: u64) -> Vec<M::Elem> {
    let mut out = Vec::new();
    for w in words_up_to_norm(max_grade) {
        if w.len() == 1 {
            out.push(engine.a_of(&w));
        }
        out.push(engine.atkinson_left(&w).expect("nonempty"));
        out.push(engine.atkinson_left_tilde(&w).expect("nonempty"));
    }
    out
}

/// The model's samples, or the reachable iterates, without the unit.
pub fn samples_for<M: RbModel>(engine: &Atkinson<M>, max_grade: u64) -> Vec<M::Elem> {
    match engine.model().sample_elements(max_grade) {
        Sampling::Basis(v) => v,
        Sampling::Reachable => reachable_elements(engine, max_grade),
    }
}

fn is_zero<M: RbModel>(m: &M, x: &M::Elem) -> bool {
    m.elem_eq(x, &m.zero())
}

/// RB relation on all pairs from the first `samples` test elements plus the
/// unit, and idempotency of `R` on the same elements.
pub fn rb_check<M: RbModel>(engine: &Atkinson<M>, samples: usize, max_grade: u64) -> Report {
    let m = engine.model();
    let mut elems = vec![m.one()];
    elems.extend(samples_for(engine, max_grade).into_iter().take(samples));
    let mut report = Report::new(m.name());

    let mut rb = Tally::new("rota-baxter relation");
    for (i, x) in elems.iter().enumerate() {
        let rx = m.r(x);
        for y in &elems[i..] {
            let ry = m.r(y);
            let lhs = m.mul(&rx, &ry);
            let inner = m.sub(&m.add(&m.mul(&rx, y), &m.mul(x, &ry)), &m.mul(x, y));
            let rhs = m.r(&inner);
            rb.record(
                m.elem_eq(&lhs, &rhs),
                || json!({ "x": m.elem_json(x), "y": m.elem_json(y) }),
            );
        }
    }
    rb.finish(&mut report);

    let mut idem = Tally::new("idempotency");
    for x in &elems {
        let rx = m.r(x);
        idem.record(m.elem_eq(&m.r(&rx), &rx), || json!({ "x": m.elem_json(x) }));
    }
    idem.finish(&mut report);
    report
}

/// The six average-algebra axioms. Elements `b ∈ Im R̃` are taken as `R̃(x)`
/// for sampled `x`; powers of `γ` run over `1..=max_power`.
pub fn average_axioms_check<M: RbModel>(
    engine: &Atkinson<M>,
    samples: usize,
    max_grade: u64,
    max_power: u32,
) -> Report {
    let m = engine.model();
    let tol = m.tolerance();
    let xs: Vec<M::Elem> = samples_for(engine, max_grade)
        .into_iter()
        .take(samples)
        .collect();
    let bs: Vec<M::Elem> = xs.iter().map(|x| m.r_tilde(x)).collect();
    let mut report = Report::new(m.name());

    let rb = rb_check(engine, samples, max_grade);
    let mut ax1 = Tally::new("axiom 1: rota-baxter and idempotent");
    for e in &rb.entries {
        ax1.checked += e.checked;
        if !e.passed() && ax1.witness.is_none() {
            ax1.witness = Some(json!({ "failed": e.axiom, "witness": e.witness }));
        }
    }
    ax1.finish(&mut report);

    let mut ax2 = Tally::new("axiom 2: sigma(gamma^n b) = gamma^n sigma(b)");
    for n in 1..=max_power {
        let g = engine.gamma_power(n);
        for b in &bs {
            let lhs = m.sigma(&m.mul(&g, b));
            let rhs = m.mul(&g, &m.sigma(b));
            ax2.record(
                m.elem_eq(&lhs, &rhs),
                || json!({ "n": n, "b": m.elem_json(b) }),
            );
        }
    }
    ax2.finish(&mut report);

    let mut ax3 = Tally::new("axiom 3: Theta morphism, Theta(1) = Theta(gamma) = 1");
    let one = M::Scalar::one();
    let t1 = m.eval(&m.one());
    ax3.record(tol.agree(&t1, &one), || json!({ "Theta(1)": t1.to_json() }));
    let tg = m.eval(&m.gamma());
    ax3.record(
        tol.agree(&tg, &one),
        || json!({ "Theta(gamma)": tg.to_json() }),
    );
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i..] {
            let lhs = m.eval(&m.mul(x, y));
            let rhs = m.eval(x) * m.eval(y);
            ax3.record(tol.agree(&lhs, &rhs), || {
                json!({ "x": m.elem_json(x), "y": m.elem_json(y),
                        "lhs": lhs.to_json(), "rhs": rhs.to_json() })
            });
        }
    }
    ax3.finish(&mut report);

    let mut ax4 = Tally::new("axiom 4: Theta(theta(R~ x) - R(sigma x)) = 0");
    for x in &xs {
        let d = m.eval(&m.sub(&m.theta(&m.r_tilde(x)), &m.r(&m.sigma(x))));
        ax4.record(
            tol.agree(&d, &M::Scalar::zero()),
            || json!({ "x": m.elem_json(x), "value": d.to_json() }),
        );
    }
    ax4.finish(&mut report);

    let mut ax5 = Tally::new("axiom 5: sigma(gamma) = gamma");
    ax5.record(
        m.elem_eq(&m.sigma(&m.gamma()), &m.gamma()),
        || json!({ "sigma(gamma)": m.elem_json(&m.sigma(&m.gamma())) }),
    );
    ax5.finish(&mut report);

    let mut ax6 = Tally::new("axiom 6: R(gamma^n R~(sigma b)) = 0");
    let mut lemma = Tally::new("axiom 6, equivalent form: R(gamma^n (sigma R~ x - R sigma x)) = 0");
    for n in 1..=max_power {
        let g = engine.gamma_power(n);
        for b in &bs {
            let v = m.r(&m.mul(&g, &m.r_tilde(&m.sigma(b))));
            ax6.record(is_zero(m, &v), || json!({ "n": n, "b": m.elem_json(b) }));
        }
        for x in &xs {
            let d = m.sub(&m.sigma(&m.r_tilde(x)), &m.r(&m.sigma(x)));
            let v = m.r(&m.mul(&g, &d));
            lemma.record(is_zero(m, &v), || json!({ "n": n, "x": m.elem_json(x) }));
        }
    }
    ax6.finish(&mut report);
    lemma.finish(&mut report);
    report
}

/// `|Θ(b)| ≤ |Θ(v b)|` and `|Θ(v R(γ^m b))| ≤ k^m |Θ(v b)|` on the unit,
/// the left iterates of words and `H^<` of forests. Only elements reachable
/// within `max_grade` are visited: `m` stays at most `max_grade` minus the
/// grade of `b`.
pub fn wellbehaved_check<M: RbModel>(engine: &Atkinson<M>, max_grade: u64) -> Report {
    let m = engine.model();
    let tol = m.tolerance();
    let mut elems = vec![(0, m.one())];
    for w in words_up_to_norm(max_grade) {
        elems.push((w.norm(), engine.atkinson_left(&w).expect("nonempty")));
    }
    let table = ForestTable::new(max_grade);
    for f in table.all_nonempty() {
        elems.push((f.norm(), engine.h_forest(f)));
    }
    let mut report = Report::new(m.name());

    let mut first = Tally::new("well-behaved 1: |Theta(b)| <= |Theta(v b)|");
    let mut second = Tally::new("well-behaved 2: |Theta(v R(gamma^m b))| <= k^m |Theta(v b)|");
    for (grade, b) in &elems {
        let tvb = m.eval(&m.majorant(b)).abs();
        let tb = m.eval(b).abs();
        first.record(
            tol.le(&tb, &tvb),
            || json!({ "b": m.elem_json(b), "lhs": tb.to_json(), "rhs": tvb.to_json() }),
        );
        let mut km = M::Scalar::one();
        for n in 1..=(max_grade - grade) as u32 {
            km = km * m.growth();
            let lhs = m
                .eval(&m.majorant(&m.r(&m.mul(&engine.gamma_power(n), b))))
                .abs();
            let rhs = km.clone() * tvb.clone();
            second.record(tol.le(&lhs, &rhs), || {
                json!({ "m": n, "b": m.elem_json(b), "lhs": lhs.to_json(), "rhs": rhs.to_json() })
            });
        }
    }
    first.finish(&mut report);
    second.finish(&mut report);
    report
}

/// For all words with `‖w‖ ≤ max_weight`: `(φ^{*-1} ⋆ ψ)(w) = ι(w)`,
/// `ψ^{*-1}(rev w) = φ(w)` and `Θ(θ(R̃-iterate)) = Θ(R-iterate)`. All
/// models are real, so conjugation is the identity.
pub fn factorization_check<M: RbModel>(engine: &Atkinson<M>, max_weight: u64) -> Report {
    let m = engine.model();
    let tol = m.tolerance();
    let cap = max_weight;
    let phi = engine.phi_char(cap);
    let psi = engine.psi_char(cap);
    let phi_inv = conv_inverse(&phi).expect("phi(∅) = 1");
    let lhs_char = convolve(&phi_inv, &psi, ProductKind::QuasiShuffle);
    let iota = iota_char::<M::Scalar>(cap);
    // ψ^{*-1} rebuilt from ψ closes the loop through both inversions.
    let psi_inv = conv_inverse(&psi).expect("psi(∅) = 1");
    let mut report = Report::new(m.name());

    let mut words = vec![Word::empty()];
    words.extend(words_up_to_norm(max_weight));

    let mut i = Tally::new("factorization: phi^-1 * psi = iota");
    let mut ii = Tally::new("factorization: psi^-1 o rev = phi");
    let mut iii = Tally::new("lemma: Theta(theta(R~ iterate)) = Theta(R iterate)");
    for w in &words {
        let a = lhs_char.eval(w).expect("within cap");
        let b = iota.eval(w).expect("within cap");
        i.record(
            tol.agree(&a, &b),
            || json!({ "word": w.values(), "lhs": a.to_json(), "rhs": b.to_json() }),
        );
        let a = psi_inv.eval(&w.reversed()).expect("within cap");
        let b = phi.eval(w).expect("within cap");
        ii.record(
            tol.agree(&a, &b),
            || json!({ "word": w.values(), "lhs": a.to_json(), "rhs": b.to_json() }),
        );
        if !w.is_empty() {
            let t = engine.atkinson_left_tilde(w).expect("nonempty");
            let a = m.eval(&m.theta(&t));
            let b = m.eval(&engine.atkinson_left(w).expect("nonempty"));
            iii.record(
                tol.agree(&a, &b),
                || json!({ "word": w.values(), "lhs": a.to_json(), "rhs": b.to_json() }),
            );
        }
    }
    i.finish(&mut report);
    ii.finish(&mut report);
    iii.finish(&mut report);
    report
}

/// `φ(u ⋆ v) = φ(u) φ(v)` for nonempty `u, v` with `‖u‖ + ‖v‖ ≤ max_weight`.
pub fn multiplicativity_check<M: RbModel>(
    engine: &Atkinson<M>,
    max_weight: u64,
    kind: ProductKind,
) -> Report {
    let m = engine.model();
    let tol = m.tolerance();
    let phi = engine.phi_char(max_weight);
    let words = words_up_to_norm(max_weight);
    let mut report = Report::new(m.name());
    let mut t = Tally::new(&format!("phi multiplicative for {}", kind.name()));
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.norm() + v.norm() > max_weight {
                continue;
            }
            let lhs = phi.eval_lin(&product(u, v, kind)).expect("within cap");
            let rhs = phi.eval(u).expect("within cap") * phi.eval(v).expect("within cap");
            t.record(tol.agree(&lhs, &rhs), || {
                json!({ "u": u.values(), "v": v.values(),
                        "lhs": lhs.to_json(), "rhs": rhs.to_json() })
            });
        }
    }
    t.finish(&mut report);
    report
}
