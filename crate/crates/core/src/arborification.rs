//! The arborification morphism `α: Hck → Hqsh` and arborified characters.

use crate::character::Character;
use crate::error::Result;
use crate::forest::{Forest, Tree};
use crate::lincomb::LinComb;
use crate::qsh::{lin_product, rev, ProductKind};
use crate::rota_baxter::{Atkinson, RbModel};
use crate::scalar::Scalar;
use crate::word::Word;

pub type ForestCharacter<S> = Character<Forest, S>;

/// `α(B⁺_ω f) = L_ω α(f)`, multiplicative for the quasi-shuffle product.
pub fn alpha(f: &Forest) -> LinComb<Word> {
    let mut acc = LinComb::basis(Word::empty());
    for t in f.trees() {
        acc = lin_product(&acc, &alpha_tree(t), ProductKind::QuasiShuffle);
    }
    acc
}

fn alpha_tree(t: &Tree) -> LinComb<Word> {
    alpha(t.children()).map_basis(|w| w.prepend(t.root()))
}

pub fn alpha_lin(x: &LinComb<Forest>) -> LinComb<Word> {
    x.flat_map(alpha)
}

/// `φ^< = φ ∘ α`.
pub fn contracted_arborify<S: Scalar>(phi: &Character<Word, S>) -> ForestCharacter<S> {
    let phi = phi.clone();
    let name = format!("{}^<", phi.name());
    Character::new(
        name,
        phi.cap(),
        ProductKind::QuasiShuffle,
        move |f: &Forest| phi.eval_lin(&alpha(f)),
    )
}

/// `φ ∘ rev ∘ α`, by expanding `α`.
pub fn antiarborify_by_alpha<S: Scalar>(phi: &Character<Word, S>) -> ForestCharacter<S> {
    let phi = phi.clone();
    let name = format!("{}^>>", phi.name());
    Character::new(
        name,
        phi.cap(),
        ProductKind::QuasiShuffle,
        move |f: &Forest| phi.eval_lin(&rev(&alpha(f))),
    )
}

/// `H^<(f)` in the model algebra.
pub fn h_forest<M: RbModel>(engine: &Atkinson<M>, f: &Forest) -> M::Elem {
    engine.h_forest(f)
}

/// `φ^≫ = Θ ∘ H^<`, without expanding `α`.
pub fn antiarborify<M: RbModel>(engine: &Atkinson<M>, cap: u64) -> ForestCharacter<M::Scalar> {
    let engine = engine.clone();
    Character::new(
        "phi^>>",
        cap,
        ProductKind::QuasiShuffle,
        move |f: &Forest| -> Result<_> { Ok(engine.model().eval(&engine.h_forest(f))) },
    )
}
