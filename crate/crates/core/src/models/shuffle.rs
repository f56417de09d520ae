//! The organic average realized on the shuffle algebra over `{1, 2}`, with
//! `R` the projection onto words starting with 1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::enumerate::words_over;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::qsh::{lin_product, ProductKind};
use crate::rota_baxter::{RbModel, Sampling};
use crate::scalar::{Tolerance, Q};
use crate::word::{Letter, Word};

use super::{prefix_product, ClosedSign};

pub type ShuffleElement = LinComb<Word>;

/// Swaps the letters 1 and 2; other letters are left alone.
pub fn swap_letters(w: &Word) -> Word {
    Word::new(
        w.letters()
            .iter()
            .map(|l| match l.value() {
                1 => Letter::new(2).expect("letter"),
                2 => Letter::new(1).expect("letter"),
                _ => *l,
            })
            .collect(),
    )
}

/// `R` keeps words whose first letter is 1; `θ = σ` swap letters; `γ = η + η̄`;
/// `Θ(w) = 1/ℓ(w)!`.
#[derive(Debug, Clone)]
pub struct ShuffleModel {
    eta: Word,
    gamma: ShuffleElement,
}

impl ShuffleModel {
    /// `η` must be nonempty over `{1, 2}` and start with 1.
    pub fn new(eta: Word) -> Result<Self> {
        if eta.is_empty() {
            return Err(Error::InvalidModel("eta must be nonempty".into()));
        }
        if let Some(l) = eta.letters().iter().find(|l| l.value() > 2) {
            return Err(Error::InvalidModel(format!(
                "eta letter {} not in {{1,2}}",
                l
            )));
        }
        if eta.first().map(Letter::value) != Some(1) {
            return Err(Error::InvalidModel(
                "eta must start with the letter 1".into(),
            ));
        }
        let gamma = LinComb::basis(eta.clone()) + LinComb::basis(swap_letters(&eta));
        Ok(ShuffleModel { eta, gamma })
    }

    pub fn eta(&self) -> &Word {
        &self.eta
    }

    /// `l = ℓ(η)`.
    pub fn l(&self) -> u32 {
        self.eta.len() as u32
    }
}

impl Default for ShuffleModel {
    fn default() -> Self {
        ShuffleModel::new(Word::from_slice(&[1, 2]).expect("letters")).expect("valid eta")
    }
}

fn inv_factorial(n: usize) -> Q {
    let f: BigInt = (1..=n).map(BigInt::from).product();
    Q::new(BigInt::one(), f)
}

impl RbModel for ShuffleModel {
    type Elem = ShuffleElement;
    type Scalar = Q;

    fn name(&self) -> String {
        format!("shuffle(eta={})", self.eta)
    }

    fn one(&self) -> ShuffleElement {
        LinComb::basis(Word::empty())
    }

    fn zero(&self) -> ShuffleElement {
        LinComb::zero()
    }

    fn add(&self, a: &ShuffleElement, b: &ShuffleElement) -> ShuffleElement {
        a.clone() + b.clone()
    }

    fn neg(&self, a: &ShuffleElement) -> ShuffleElement {
        -a.clone()
    }

    fn sub(&self, a: &ShuffleElement, b: &ShuffleElement) -> ShuffleElement {
        a.clone() - b.clone()
    }

    fn mul(&self, a: &ShuffleElement, b: &ShuffleElement) -> ShuffleElement {
        lin_product(a, b, ProductKind::Shuffle)
    }

    fn r(&self, a: &ShuffleElement) -> ShuffleElement {
        a.filter(|w| w.first().map(Letter::value) == Some(1))
    }

    fn theta(&self, a: &ShuffleElement) -> ShuffleElement {
        a.map_basis(swap_letters)
    }

    fn sigma(&self, a: &ShuffleElement) -> ShuffleElement {
        a.map_basis(swap_letters)
    }

    fn gamma(&self) -> ShuffleElement {
        self.gamma.clone()
    }

    fn eval(&self, a: &ShuffleElement) -> Q {
        a.iter()
            .fold(Q::zero(), |acc, (w, c)| acc + c * inv_factorial(w.len()))
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance::Exact
    }

    fn elem_eq(&self, a: &ShuffleElement, b: &ShuffleElement) -> bool {
        a == b
    }

    fn elem_json(&self, a: &ShuffleElement) -> Value {
        json!({ "lincomb": a.to_string() })
    }

    /// Nonempty words over `{1, 2}` of length at most `max_grade`.
    fn sample_elements(&self, max_grade: u64) -> Sampling<ShuffleElement> {
        Sampling::Basis(
            words_over(&[1, 2], max_grade as usize)
                .into_iter()
                .map(LinComb::basis)
                .collect(),
        )
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn pow_big(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn integral(x: Q, what: &str) -> Result<BigInt> {
    if x.denom().is_one() {
        Ok(x.to_integer())
    } else {
        Err(Error::Precondition(format!(
            "{} is not an integer: {}",
            what, x
        )))
    }
}

/// `K(w) = 2^{‖w‖−n} (l‖w‖)! / (l!)^{‖w‖} · ∏_k (1 + ω̌_{k−1}/ω̌_k)`.
#[allow(non_snake_case)]
pub fn shuffle_K_closed(w: &Word, l: u32) -> Result<BigInt> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let norm = w.norm();
    let l = u64::from(l);
    let mut x = Q::new(
        pow_big(2, norm - w.len() as u64) * factorial(l * norm),
        num_traits::pow(factorial(l), norm as usize),
    );
    let mut prev = 0u64;
    for s in w.prefix_sums() {
        x *= Q::new(BigInt::from(s + prev), BigInt::from(s));
        prev = s;
    }
    integral(x, "K")
}

/// `K(w) = (1 + ‖w'‖/‖w‖) · 2^{ω_n − 1} (l‖w‖)! / ((l!)^{ω_n} (l‖w'‖)!) · K(w')`,
/// `K(∅) = 1`.
#[allow(non_snake_case)]
pub fn shuffle_K_recursive(w: &Word, l: u32) -> Result<BigInt> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let l = u64::from(l);
    let mut k = Q::one();
    let mut prev = 0u64;
    for (letter, s) in w.letters().iter().zip(w.prefix_sums()) {
        let wn = u64::from(letter.value());
        let step = Q::new(BigInt::from(s + prev), BigInt::from(s))
            * Q::new(
                pow_big(2, wn - 1) * factorial(l * s),
                num_traits::pow(factorial(l), wn as usize) * factorial(l * prev),
            );
        k *= step;
        prev = s;
    }
    integral(k, "K")
}

/// Number of words, with multiplicity, in an element whose coefficients all
/// share one sign.
#[allow(non_snake_case)]
pub fn shuffle_K_count(iterate: &ShuffleElement) -> Result<BigInt> {
    let total = iterate.weight();
    if total != iterate.coefficient_sum().abs() {
        return Err(Error::Precondition("coefficients of mixed sign".into()));
    }
    integral(total, "word count")
}

/// Same product as the organic closed formula.
pub fn shuffle_phi_closed(w: &Word, sign: ClosedSign) -> Result<Q> {
    prefix_product(w, sign)
}
