//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use atkinson_core::forest::Forest;
use atkinson_core::lincomb::LinComb;
use atkinson_core::scalar::Q;
use atkinson_core::word::Word;
use num_traits::One;

pub fn w(v: &[u32]) -> Word {
    Word::from_slice(v).unwrap()
}

pub fn forest(s: &str) -> Forest {
    s.parse().unwrap()
}

/// Subsets of `0..k` of size `n`, as sorted index vectors.
pub fn subsets(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize == n {
            out.push((0..k).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// Quasi-shuffles as pairs of position sets `A, B ⊆ 0..k` with `|A| = ℓ(u)`,
/// `|B| = ℓ(v)` and `A ∪ B = 0..k`; the letter at a shared position is the
/// sum.
pub fn qsh_by_positions(u: &Word, v: &Word) -> LinComb<Word> {
    let (n, m) = (u.len(), v.len());
    let mut out = LinComb::zero();
    for k in n.max(m)..=n + m {
        for a in subsets(k, n) {
            for b in subsets(k, m) {
                let mut covered = vec![0u32; k];
                for (i, &p) in a.iter().enumerate() {
                    covered[p] += u.values()[i];
                }
                for (j, &p) in b.iter().enumerate() {
                    covered[p] += v.values()[j];
                }
                if covered.iter().all(|&c| c > 0) {
                    out.add_term(Word::from_slice(&covered).unwrap(), Q::one());
                }
            }
        }
    }
    out
}

/// Shuffles as position sets of `u` inside `0..ℓ(u)+ℓ(v)`.
pub fn sh_by_positions(u: &Word, v: &Word) -> LinComb<Word> {
    let (n, m) = (u.len(), v.len());
    let mut out = LinComb::zero();
    for a in subsets(n + m, n) {
        let (mut i, mut j) = (0, 0);
        let mut letters = Vec::with_capacity(n + m);
        for p in 0..n + m {
            if a.contains(&p) {
                letters.push(u.values()[i]);
                i += 1;
            } else {
                letters.push(v.values()[j]);
                j += 1;
            }
        }
        out.add_term(Word::from_slice(&letters).unwrap(), Q::one());
    }
    out
}

/// Orderings of the nodes where every parent precedes its children.
pub fn linear_extensions(f: &Forest) -> usize {
    let nodes = f.flatten();
    fn go(nodes: &[(u32, Option<usize>)], placed: &mut Vec<bool>, left: usize) -> usize {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for i in 0..nodes.len() {
            let ready = !placed[i] && nodes[i].1.is_none_or(|p| placed[p]);
            if ready {
                placed[i] = true;
                total += go(nodes, placed, left - 1);
                placed[i] = false;
            }
        }
        total
    }
    go(&nodes, &mut vec![false; nodes.len()], nodes.len())
}

/// `binomial(n, k)`.
pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `P(S_1 > 0, …, S_n > 0)` for a Gaussian walk with increments of variance
/// proportional to `ω_i`, for `n ≤ 3`, from the orthant formulas.
pub fn orthant_probability(omegas: &[u32]) -> f64 {
    use std::f64::consts::PI;
    let s: Vec<f64> = omegas
        .iter()
        .scan(0.0, |acc, &o| {
            *acc += f64::from(o);
            Some(*acc)
        })
        .collect();
    // corr(S_i, S_j) = sqrt(s_i / s_j) for i < j.
    let rho = |i: usize, j: usize| (s[i] / s[j]).sqrt();
    match omegas.len() {
        1 => 0.5,
        2 => 0.25 + rho(0, 1).asin() / (2.0 * PI),
        3 => 0.125 + (rho(0, 1).asin() + rho(0, 2).asin() + rho(1, 2).asin()) / (4.0 * PI),
        n => panic!("no closed orthant formula for {} increments", n),
    }
}

/// `C(2n, n) / 4^n`, the probability that an exchangeable symmetric walk of
/// `n` steps stays positive.
pub fn sparre_andersen(n: u64) -> f64 {
    binomial(2 * n, n) as f64 / 4f64.powi(n as i32)
}

/// Sorted multiset of coefficients, to compare expansions up to relabelling.
pub fn coefficient_profile<B: Ord + Clone>(x: &LinComb<B>) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for (_, c) in x.iter() {
        *out.entry(c.to_string()).or_insert(0) += 1;
    }
    out
}
