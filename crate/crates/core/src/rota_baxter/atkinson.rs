use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::character::{conv_inverse, Character, WordCharacter};
use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};
use crate::qsh::ProductKind;
use crate::scalar::Scalar;
use crate::word::Word;

use super::RbModel;

struct Memo<K, V>(RwLock<HashMap<K, V>>);

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo(RwLock::new(HashMap::new()))
    }

    fn get(&self, k: &K) -> Option<V> {
        self.0.read().expect("memo poisoned").get(k).cloned()
    }

    fn insert(&self, k: K, v: V) -> V {
        self.0
            .write()
            .expect("memo poisoned")
            .entry(k)
            .or_insert(v)
            .clone()
    }

    fn len(&self) -> usize {
        self.0.read().expect("memo poisoned").len()
    }
}

struct Engine<M: RbModel> {
    model: M,
    gamma_pow: RwLock<Vec<M::Elem>>,
    left: Memo<Word, M::Elem>,
    tilde: Memo<Word, M::Elem>,
    trees: Memo<Tree, M::Elem>,
}

/// Atkinson recursion on a model, with memoized iterates. Clones share the
/// memo tables.
pub struct Atkinson<M: RbModel> {
    inner: Arc<Engine<M>>,
}

impl<M: RbModel> Clone for Atkinson<M> {
    fn clone(&self) -> Self {
        Atkinson {
            inner: Arc::clone(&self.inner),
        }
    }
}

/// The iterates attached to one word `w = (ω_1, …, ω_n)`.
#[derive(Debug, Clone)]
pub struct AtkinsonState<E> {
    pub word: Word,
    /// `left[k]` is the left iterate on the prefix of length `k`; `left[0]` is
    /// the unit.
    pub left: Vec<E>,
    /// `right[k]` is the right iterate on the suffix starting at `k`;
    /// `right[n]` is the unit.
    pub right: Vec<E>,
    /// As `left`, with `R̃` in place of `R`.
    pub tilde: Vec<E>,
}

impl<M: RbModel> Atkinson<M> {
    pub fn new(model: M) -> Self {
        let one = model.one();
        Atkinson {
            inner: Arc::new(Engine {
                model,
                gamma_pow: RwLock::new(vec![one]),
                left: Memo::new(),
                tilde: Memo::new(),
                trees: Memo::new(),
            }),
        }
    }

    pub fn model(&self) -> &M {
        &self.inner.model
    }

    /// `γ^k` in the model algebra.
    pub fn gamma_power(&self, k: u32) -> M::Elem {
        let k = k as usize;
        if let Some(p) = self.inner.gamma_pow.read().expect("poisoned").get(k) {
            return p.clone();
        }
        let m = &self.inner.model;
        let gamma = m.gamma();
        let mut pows = self.inner.gamma_pow.write().expect("poisoned");
        while pows.len() <= k {
            let next = m.mul(pows.last().expect("nonempty"), &gamma);
            pows.push(next);
        }
        pows[k].clone()
    }

    /// `a(w) = −γ^ω` on a single letter `(ω)`, zero elsewhere.
    pub fn a_of(&self, w: &Word) -> M::Elem {
        let m = &self.inner.model;
        match w.letters() {
            [l] => m.neg(&self.gamma_power(l.value())),
            _ => m.zero(),
        }
    }

    fn letter_a(&self, value: u32) -> M::Elem {
        self.inner.model.neg(&self.gamma_power(value))
    }

    fn iterate(&self, w: &Word, tilde: bool) -> Result<M::Elem> {
        if w.is_empty() {
            return Err(Error::Precondition(
                "Atkinson iterate of the empty word".into(),
            ));
        }
        let memo = if tilde {
            &self.inner.tilde
        } else {
            &self.inner.left
        };
        if let Some(v) = memo.get(w) {
            return Ok(v);
        }
        let m = &self.inner.model;
        // Extend from the longest memoized prefix.
        let n = w.len();
        let mut k = n - 1;
        let mut acc = None;
        while k > 0 {
            if let Some(v) = memo.get(&w.prefix(k)) {
                acc = Some(v);
                break;
            }
            k -= 1;
        }
        let mut acc = acc.unwrap_or_else(|| m.one());
        for j in k..n {
            let x = m.mul(&self.letter_a(w.letters()[j].value()), &acc);
            acc = if tilde { m.r_tilde(&x) } else { m.r(&x) };
            acc = memo.insert(w.prefix(j + 1), acc);
        }
        Ok(acc)
    }

    /// `R(a(ω_n) · R(a(ω_{n−1}) ⋯ R(a(ω_1))))`.
    pub fn atkinson_left(&self, w: &Word) -> Result<M::Elem> {
        self.iterate(w, false)
    }

    /// As [`Atkinson::atkinson_left`] with `R̃ = id − R`.
    pub fn atkinson_left_tilde(&self, w: &Word) -> Result<M::Elem> {
        self.iterate(w, true)
    }

    /// Unmemoized left or tilde iterate: γ powers rebuilt each time and
    /// products taken in the opposite order.
    pub fn iterate_direct(&self, w: &Word, tilde: bool) -> Result<M::Elem> {
        let m = &self.inner.model;
        let (last, init) = match w.letters().split_last() {
            Some((l, rest)) => (*l, Word::new(rest.to_vec())),
            None => {
                return Err(Error::Precondition(
                    "Atkinson iterate of the empty word".into(),
                ))
            }
        };
        let inner = if init.is_empty() {
            m.one()
        } else {
            self.iterate_direct(&init, tilde)?
        };
        let mut g = m.one();
        for _ in 0..last.value() {
            g = m.mul(&m.gamma(), &g);
        }
        let x = m.mul(&inner, &m.neg(&g));
        Ok(if tilde { m.r_tilde(&x) } else { m.r(&x) })
    }

    pub fn state(&self, w: &Word) -> Result<AtkinsonState<M::Elem>> {
        let m = &self.inner.model;
        let n = w.len();
        let mut left = vec![m.one()];
        let mut tilde = vec![m.one()];
        let mut right = vec![m.one(); n + 1];
        for k in 1..=n {
            left.push(self.atkinson_left(&w.prefix(k))?);
            tilde.push(self.atkinson_left_tilde(&w.prefix(k))?);
        }
        for (k, slot) in right.iter_mut().enumerate().take(n) {
            *slot = self.atkinson_left(&w.suffix_from(k).reversed())?;
        }
        Ok(AtkinsonState {
            word: w.clone(),
            left,
            right,
            tilde,
        })
    }

    /// `φ(w) = Θ(atkinson_left(w))`, `φ(∅) = 1`.
    pub fn phi_char(&self, cap: u64) -> WordCharacter<M::Scalar> {
        let me = self.clone();
        Character::new("phi", cap, ProductKind::QuasiShuffle, move |w: &Word| {
            if w.is_empty() {
                return Ok(M::Scalar::one());
            }
            Ok(me.model().eval(&me.atkinson_left(w)?))
        })
    }

    /// `w ↦ ψ^{*-1}(rev w) = Θ(atkinson_left_tilde(w))`.
    pub fn psi_inv_rev_char(&self, cap: u64) -> WordCharacter<M::Scalar> {
        let me = self.clone();
        Character::new(
            "psi_inv_rev",
            cap,
            ProductKind::QuasiShuffle,
            move |w: &Word| {
                if w.is_empty() {
                    return Ok(M::Scalar::one());
                }
                Ok(me.model().eval(&me.atkinson_left_tilde(w)?))
            },
        )
    }

    /// `ψ^{*-1}`.
    pub fn psi_inv_char(&self, cap: u64) -> WordCharacter<M::Scalar> {
        let rev = self.psi_inv_rev_char(cap);
        Character::new(
            "psi_inv",
            cap,
            ProductKind::QuasiShuffle,
            move |w: &Word| rev.eval(&w.reversed()),
        )
    }

    /// `ψ`, as the convolution inverse of `ψ^{*-1}`.
    pub fn psi_char(&self, cap: u64) -> WordCharacter<M::Scalar> {
        conv_inverse(&self.psi_inv_char(cap)).expect("psi_inv(∅) = 1")
    }

    /// `H^<` on a tree: `R(a(root) · H^<(children))`.
    pub fn h_tree(&self, t: &Tree) -> M::Elem {
        if let Some(v) = self.inner.trees.get(t) {
            return v;
        }
        let m = &self.inner.model;
        let inner = self.h_forest(t.children());
        let v = m.r(&m.mul(&self.letter_a(t.root().value()), &inner));
        self.inner.trees.insert(t.clone(), v)
    }

    /// `H^<`, multiplicative over forests with `H^<(∅) = 1`.
    pub fn h_forest(&self, f: &Forest) -> M::Elem {
        let m = &self.inner.model;
        let mut acc = m.one();
        for t in f.trees() {
            acc = m.mul(&acc, &self.h_tree(t));
        }
        acc
    }

    /// Memo sizes `(left, tilde, trees)`.
    pub fn memo_sizes(&self) -> (usize, usize, usize) {
        (
            self.inner.left.len(),
            self.inner.tilde.len(),
            self.inner.trees.len(),
        )
    }
}
