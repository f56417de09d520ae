//! Concrete average algebras.

pub mod diffusion;
pub mod organic;
pub mod shuffle;

/// Sign convention for the closed product formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosedSign {
    /// `∏ (ω_k / (2 ω̌_k) − 1)`; agrees with the recursion.
    Plain,
    /// The plain product times `(−1)^n`, `n` the word length or node count.
    Alternating,
}

impl ClosedSign {
    pub fn factor(self, n: usize) -> i64 {
        match self {
            ClosedSign::Plain => 1,
            ClosedSign::Alternating if n % 2 == 1 => -1,
            ClosedSign::Alternating => 1,
        }
    }
}

use crate::error::{Error, Result};
use crate::scalar::{q, Q};
use crate::word::Word;

/// `∏_k (ω_k / (2 ω̌_k) − 1)` over prefix sums `ω̌_k`.
pub(crate) fn prefix_product(w: &Word, sign: ClosedSign) -> Result<Q> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut acc = q(sign.factor(w.len()), 1);
    for (l, s) in w.letters().iter().zip(w.prefix_sums()) {
        acc *= q(i64::from(l.value()), 2 * s as i64) - q(1, 1);
    }
    Ok(acc)
}
