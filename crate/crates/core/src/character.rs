//! Characters: memoized maps from a graded basis to scalars.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::qsh::ProductKind;
use crate::scalar::Scalar;
use crate::word::Word;

/// Basis elements carrying a grade.
pub trait Graded {
    fn grade(&self) -> u64;
}

impl Graded for Word {
    fn grade(&self) -> u64 {
        self.norm()
    }
}

type EvalFn<K, S> = dyn Fn(&K) -> Result<S> + Send + Sync;

struct Inner<K, S> {
    name: String,
    cap: u64,
    product: ProductKind,
    eval: Box<EvalFn<K, S>>,
    memo: RwLock<HashMap<K, S>>,
}

/// A character evaluated lazily on basis elements up to a grade cap.
///
/// Clones share the memo table. Evaluation above the cap is an error.
pub struct Character<K, S> {
    inner: Arc<Inner<K, S>>,
}

pub type WordCharacter<S> = Character<Word, S>;

impl<K, S> Clone for Character<K, S> {
    fn clone(&self) -> Self {
        Character {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<K, S> fmt::Debug for Character<K, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Character")
            .field("name", &self.inner.name)
            .field("cap", &self.inner.cap)
            .finish()
    }
}

impl<K, S> Character<K, S>
where
    K: Graded + Eq + Hash + Ord + Clone + Send + Sync + 'static,
    S: Scalar,
{
    pub fn new(
        name: impl Into<String>,
        cap: u64,
        product: ProductKind,
        eval: impl Fn(&K) -> Result<S> + Send + Sync + 'static,
    ) -> Self {
        Character {
            inner: Arc::new(Inner {
                name: name.into(),
                cap,
                product,
                eval: Box::new(eval),
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// Largest grade this character may be evaluated on.
    pub fn cap(&self) -> u64 {
        self.inner.cap
    }

    /// The product this character is multiplicative for.
    pub fn product(&self) -> ProductKind {
        self.inner.product
    }

    pub fn eval(&self, k: &K) -> Result<S> {
        let g = k.grade();
        if g > self.inner.cap {
            return Err(Error::GradeCap {
                norm: g,
                cap: self.inner.cap,
            });
        }
        if let Some(v) = self.inner.memo.read().expect("memo poisoned").get(k) {
            return Ok(v.clone());
        }
        let v = (self.inner.eval)(k)?;
        // First writer wins so that concurrent callers all see one value.
        let mut memo = self.inner.memo.write().expect("memo poisoned");
        Ok(memo.entry(k.clone()).or_insert(v).clone())
    }

    pub fn eval_lin(&self, x: &LinComb<K>) -> Result<S> {
        let mut acc = S::zero();
        for (k, c) in x.iter() {
            acc = acc + S::from_q(c) * self.eval(k)?;
        }
        Ok(acc)
    }

    pub fn memo_len(&self) -> usize {
        self.inner.memo.read().expect("memo poisoned").len()
    }
}

/// `e(w) = [w = ∅]`, the unit of convolution.
pub fn counit<S: Scalar>(cap: u64, product: ProductKind) -> WordCharacter<S> {
    Character::new("e", cap, product, |w: &Word| {
        Ok(if w.is_empty() { S::one() } else { S::zero() })
    })
}

/// `ι(w) = 1` if `ℓ(w) ≤ 1`, else 0.
pub fn iota_char<S: Scalar>(cap: u64) -> WordCharacter<S> {
    Character::new("iota", cap, ProductKind::QuasiShuffle, |w: &Word| {
        Ok(if w.len() <= 1 { S::one() } else { S::zero() })
    })
}

/// `(f ⋆ g)(w) = Σ f(w¹) g(w²)` over deconcatenation splits. The result is
/// tagged with `product`; the sum itself only involves the coproduct.
pub fn convolve<S: Scalar>(
    f: &WordCharacter<S>,
    g: &WordCharacter<S>,
    product: ProductKind,
) -> WordCharacter<S> {
    let (f, g) = (f.clone(), g.clone());
    let cap = f.cap().min(g.cap());
    let name = format!("({} * {})", f.name(), g.name());
    Character::new(name, cap, product, move |w: &Word| {
        let mut acc = S::zero();
        for k in 0..=w.len() {
            acc = acc + f.eval(&w.prefix(k))? * g.eval(&w.suffix_from(k))?;
        }
        Ok(acc)
    })
}

/// Convolution inverse by the graded-connected recursion
/// `g(∅) = 1`, `g(w) = −Σ_{w = w¹w², w² ≠ ∅} g(w¹) f(w²)`.
pub fn conv_inverse<S: Scalar>(f: &WordCharacter<S>) -> Result<WordCharacter<S>> {
    let unit = f.eval(&Word::empty())?;
    if unit != S::one() {
        return Err(Error::NotUnital(format!(
            "{}(∅) = {}",
            f.name(),
            unit.render()
        )));
    }
    let f = f.clone();
    let name = format!("{}^-1", f.name());
    Ok(Character::new(
        name,
        f.cap(),
        f.product(),
        move |w: &Word| {
            // g on the prefixes of w, shortest first.
            let mut g: Vec<S> = Vec::with_capacity(w.len() + 1);
            g.push(S::one());
            for k in 1..=w.len() {
                let mut acc = S::zero();
                for (j, gj) in g.iter().enumerate() {
                    let tail = Word::new(w.letters()[j..k].to_vec());
                    acc = acc - gj.clone() * f.eval(&tail)?;
                }
                g.push(acc);
            }
            Ok(g.pop().expect("nonempty"))
        },
    ))
}
