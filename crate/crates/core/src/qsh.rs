//! Quasi-shuffle and shuffle products on words, deconcatenation, reversal.

use num_traits::One;

use crate::lincomb::LinComb;
use crate::scalar::Q;
use crate::word::Word;

/// Which product the word algebra carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// Shuffle plus contraction terms `(a+b)(m ⧢ n)`.
    QuasiShuffle,
    /// Interleavings only.
    Shuffle,
}

impl ProductKind {
    pub fn name(self) -> &'static str {
        match self {
            ProductKind::QuasiShuffle => "qsh",
            ProductKind::Shuffle => "sh",
        }
    }
}

/// Product of two words.
///
/// Fills a table `t[i][j] = u[i..] ⋆ v[j..]` from the back, using
/// `a m ⋆ b n = a(m ⋆ b n) + b(a m ⋆ n) [+ (a+b)(m ⋆ n)]`.
pub fn product(u: &Word, v: &Word, kind: ProductKind) -> LinComb<Word> {
    let (n, m) = (u.len(), v.len());
    if n == 0 {
        return LinComb::basis(v.clone());
    }
    if m == 0 {
        return LinComb::basis(u.clone());
    }
    let ul = u.letters();
    let vl = v.letters();
    // Row i + 1 of the table, then row i.
    let mut below: Vec<LinComb<Word>> = (0..=m).map(|j| LinComb::basis(v.suffix_from(j))).collect();
    for i in (0..n).rev() {
        let mut row: Vec<LinComb<Word>> = vec![LinComb::zero(); m + 1];
        row[m] = LinComb::basis(u.suffix_from(i));
        for j in (0..m).rev() {
            let mut acc = below[j].map_basis(|w| w.prepend(ul[i]));
            acc = acc + row[j + 1].map_basis(|w| w.prepend(vl[j]));
            if kind == ProductKind::QuasiShuffle {
                acc = acc + below[j + 1].map_basis(|w| w.prepend(ul[i] + vl[j]));
            }
            row[j] = acc;
        }
        below = row;
    }
    below.swap_remove(0)
}

pub fn qsh_product(u: &Word, v: &Word) -> LinComb<Word> {
    product(u, v, ProductKind::QuasiShuffle)
}

pub fn sh_product(u: &Word, v: &Word) -> LinComb<Word> {
    product(u, v, ProductKind::Shuffle)
}

/// Bilinear extension of [`product`].
pub fn lin_product(x: &LinComb<Word>, y: &LinComb<Word>, kind: ProductKind) -> LinComb<Word> {
    let mut out = LinComb::zero();
    for (u, a) in x.iter() {
        for (v, b) in y.iter() {
            out.add_scaled(&product(u, v, kind), &(a * b));
        }
    }
    out
}

/// `x^{⋆k}`, with `x^0 = ∅`.
pub fn power(x: &LinComb<Word>, k: u32, kind: ProductKind) -> LinComb<Word> {
    let mut acc = LinComb::basis(Word::empty());
    for _ in 0..k {
        acc = lin_product(&acc, x, kind);
    }
    acc
}

/// `Δ(w) = Σ w¹ ⊗ w²` over the `ℓ(w)+1` splits.
pub fn deconcat(w: &Word) -> LinComb<(Word, Word)> {
    (0..=w.len())
        .map(|k| ((w.prefix(k), w.suffix_from(k)), Q::one()))
        .collect()
}

pub fn deconcat_lin(x: &LinComb<Word>) -> LinComb<(Word, Word)> {
    x.flat_map(deconcat)
}

pub fn rev(x: &LinComb<Word>) -> LinComb<Word> {
    x.map_basis(Word::reversed)
}

/// Componentwise product on `H ⊗ H`.
pub fn tensor_product(
    x: &LinComb<(Word, Word)>,
    y: &LinComb<(Word, Word)>,
    kind: ProductKind,
) -> LinComb<(Word, Word)> {
    let mut out = LinComb::zero();
    for ((a1, a2), c) in x.iter() {
        for ((b1, b2), d) in y.iter() {
            let left = product(a1, b1, kind);
            let right = product(a2, b2, kind);
            let cd = c * d;
            for (l, e) in left.iter() {
                for (r, f) in right.iter() {
                    out.add_term((l.clone(), r.clone()), &cd * e * f);
                }
            }
        }
    }
    out
}

/// `ι(w) = 1` if `ℓ(w) ≤ 1`, else 0.
pub fn iota(w: &Word) -> Q {
    if w.len() <= 1 {
        Q::one()
    } else {
        Q::from_integer(0.into())
    }
}
