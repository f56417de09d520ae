mod common;

use atkinson_core::character::{
    conv_inverse, convolve, counit, iota_char, Character, WordCharacter,
};
use atkinson_core::enumerate::words_up_to_norm;
use atkinson_core::lincomb::LinComb;
use atkinson_core::qsh::{
    deconcat, deconcat_lin, lin_product, product, qsh_product, rev, sh_product, tensor_product,
    ProductKind,
};
use atkinson_core::scalar::{q, q_int, Q};
use atkinson_core::word::Word;
use common::{binomial, qsh_by_positions, sh_by_positions, w};
use proptest::prelude::*;

const KINDS: [ProductKind; 2] = [ProductKind::QuasiShuffle, ProductKind::Shuffle];

fn all_words(max: u64) -> Vec<Word> {
    let mut v = vec![Word::empty()];
    v.extend(words_up_to_norm(max));
    v
}

#[test]
fn products_match_position_oracles() {
    let ws = all_words(5);
    for u in &ws {
        for v in &ws {
            if u.norm() + v.norm() > 6 {
                continue;
            }
            assert_eq!(qsh_product(u, v), qsh_by_positions(u, v), "{} qsh {}", u, v);
            assert_eq!(sh_product(u, v), sh_by_positions(u, v), "{} sh {}", u, v);
        }
    }
}

#[test]
fn commutative_and_associative_up_to_norm_six() {
    let ws = all_words(6);
    for kind in KINDS {
        for u in &ws {
            for v in &ws {
                if u.norm() + v.norm() > 6 {
                    continue;
                }
                assert_eq!(product(u, v, kind), product(v, u, kind));
                for x in &ws {
                    if u.norm() + v.norm() + x.norm() > 6 {
                        continue;
                    }
                    let left = lin_product(&product(u, v, kind), &LinComb::basis(x.clone()), kind);
                    let right = lin_product(&LinComb::basis(u.clone()), &product(v, x, kind), kind);
                    assert_eq!(left, right, "{} {} {}", u, v, x);
                }
            }
        }
    }
}

#[test]
fn grading_and_term_counts() {
    let ws = all_words(6);
    for u in &ws {
        for v in &ws {
            if u.norm() + v.norm() > 6 {
                continue;
            }
            let p = qsh_product(u, v);
            assert!(p.basis_elements().all(|x| x.norm() == u.norm() + v.norm()));
            assert!(p.iter().all(|(_, c)| *c > q_int(0) && c.is_integer()));
            let s = sh_product(u, v);
            assert!(s.basis_elements().all(|x| x.len() == u.len() + v.len()));
            let n = binomial((u.len() + v.len()) as u64, u.len() as u64);
            assert_eq!(s.coefficient_sum(), q_int(n as i64));
        }
    }
}

fn triple_left(x: &LinComb<Word>) -> LinComb<(Word, Word, Word)> {
    let mut out = LinComb::zero();
    for ((a, b), c) in deconcat_lin(x).iter() {
        for ((a1, a2), d) in deconcat(a).iter() {
            out.add_term((a1.clone(), a2.clone(), b.clone()), c * d);
        }
    }
    out
}

fn triple_right(x: &LinComb<Word>) -> LinComb<(Word, Word, Word)> {
    let mut out = LinComb::zero();
    for ((a, b), c) in deconcat_lin(x).iter() {
        for ((b1, b2), d) in deconcat(b).iter() {
            out.add_term((a.clone(), b1.clone(), b2.clone()), c * d);
        }
    }
    out
}

#[test]
fn deconcat_is_coassociative() {
    for word in atkinson_core::enumerate::words_over(&[1, 2, 3], 5) {
        let x = LinComb::basis(word);
        assert_eq!(triple_left(&x), triple_right(&x));
    }
}

#[test]
fn deconcat_has_length_plus_one_terms() {
    for word in all_words(5) {
        assert_eq!(deconcat(&word).len(), word.len() + 1);
    }
}

#[test]
fn coproduct_is_an_algebra_morphism() {
    let ws = all_words(5);
    for kind in KINDS {
        for u in &ws {
            for v in &ws {
                if u.norm() + v.norm() > 5 {
                    continue;
                }
                let lhs = deconcat_lin(&product(u, v, kind));
                let rhs = tensor_product(&deconcat(u), &deconcat(v), kind);
                assert_eq!(lhs, rhs, "{} {}", u, v);
            }
        }
    }
}

#[test]
fn rev_is_a_morphism_and_an_involution() {
    let ws = all_words(6);
    for u in &ws {
        let x = LinComb::basis(u.clone());
        assert_eq!(rev(&rev(&x)), x);
        for v in &ws {
            if u.norm() + v.norm() > 6 {
                continue;
            }
            let lhs = rev(&qsh_product(u, v));
            let rhs = lin_product(
                &rev(&LinComb::basis(u.clone())),
                &rev(&LinComb::basis(v.clone())),
                ProductKind::QuasiShuffle,
            );
            assert_eq!(lhs, rhs);
        }
    }
}

/// `(n) ↦ t^n` on letters, zero on longer words; qsh-multiplicative.
fn letter_power_char(t: Q, cap: u64) -> WordCharacter<Q> {
    Character::new("powers", cap, ProductKind::QuasiShuffle, move |w: &Word| {
        Ok(match w.len() {
            0 => q_int(1),
            1 => num_traits::pow(t.clone(), w.norm() as usize),
            _ => q_int(0),
        })
    })
}

fn assert_multiplicative(f: &WordCharacter<Q>, max: u64) {
    let ws = words_up_to_norm(max);
    for u in &ws {
        for v in &ws {
            if u.norm() + v.norm() > max {
                continue;
            }
            let lhs = f.eval_lin(&qsh_product(u, v)).unwrap();
            let rhs = f.eval(u).unwrap() * f.eval(v).unwrap();
            assert_eq!(lhs, rhs, "{} at {} {}", f.name(), u, v);
        }
    }
}

#[test]
fn convolution_identities() {
    let cap = 6;
    let i = iota_char::<Q>(cap);
    let p = letter_power_char(q(1, 2), cap);
    let e = counit::<Q>(cap, ProductKind::QuasiShuffle);
    let qk = ProductKind::QuasiShuffle;
    let ip = convolve(&convolve(&i, &p, qk), &i, qk);
    let pi = convolve(&i, &convolve(&p, &i, qk), qk);
    for word in all_words(cap) {
        assert_eq!(ip.eval(&word).unwrap(), pi.eval(&word).unwrap());
        assert_eq!(
            convolve(&e, &p, qk).eval(&word).unwrap(),
            p.eval(&word).unwrap()
        );
        assert_eq!(
            convolve(&p, &e, qk).eval(&word).unwrap(),
            p.eval(&word).unwrap()
        );
    }
    for f in [&i, &p] {
        let g = conv_inverse(f).unwrap();
        let gf = convolve(&g, f, qk);
        let fg = convolve(f, &g, qk);
        for word in all_words(cap) {
            let target = if word.is_empty() { q_int(1) } else { q_int(0) };
            assert_eq!(gf.eval(&word).unwrap(), target);
            assert_eq!(fg.eval(&word).unwrap(), target);
        }
    }
}

#[test]
fn convolution_preserves_multiplicativity() {
    let cap = 5;
    let i = iota_char::<Q>(cap);
    let p = letter_power_char(q(-3, 2), cap);
    assert_multiplicative(&i, cap);
    assert_multiplicative(&p, cap);
    let qk = ProductKind::QuasiShuffle;
    assert_multiplicative(&convolve(&i, &p, qk), cap);
    assert_multiplicative(&convolve(&p, &convolve(&i, &i, qk), qk), cap);
    assert_multiplicative(&conv_inverse(&p).unwrap(), cap);
}

#[test]
fn text_and_json_round_trip() {
    for word in all_words(4) {
        assert_eq!(word.to_syntax().parse::<Word>().unwrap(), word);
    }
    let x = qsh_product(&w(&[1, 2]), &w(&[3]));
    assert_eq!(LinComb::words_from_json(&x.to_json()), Some(x));
}

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec(1u32..5, 0..4).prop_map(|v| Word::from_slice(&v).unwrap())
}

proptest! {
    #[test]
    fn random_products_commute_and_associate(
        u in word_strategy(), v in word_strategy(), x in word_strategy()
    ) {
        for kind in KINDS {
            prop_assert_eq!(product(&u, &v, kind), product(&v, &u, kind));
            let left = lin_product(&product(&u, &v, kind), &LinComb::basis(x.clone()), kind);
            let right = lin_product(&LinComb::basis(u.clone()), &product(&v, &x, kind), kind);
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn random_products_match_oracles(u in word_strategy(), v in word_strategy()) {
        prop_assert_eq!(qsh_product(&u, &v), qsh_by_positions(&u, &v));
        prop_assert_eq!(sh_product(&u, &v), sh_by_positions(&u, &v));
    }

    #[test]
    fn random_rev_morphism(u in word_strategy(), v in word_strategy()) {
        let lhs = rev(&qsh_product(&u, &v));
        let rhs = qsh_product(&u.reversed(), &v.reversed());
        prop_assert_eq!(lhs, rhs);
    }
}
