//! Exhaustive enumeration of words and forests by grade.

use crate::forest::{Forest, Tree};
use crate::word::{Letter, Word};

/// All words of norm exactly `n`, i.e. compositions of `n`.
pub fn words_of_norm(n: u64) -> Vec<Word> {
    fn go(rest: u64, cur: &mut Vec<u32>, out: &mut Vec<Word>) {
        if rest == 0 {
            out.push(Word::from_slice(cur).expect("positive parts"));
            return;
        }
        for first in 1..=rest {
            cur.push(first as u32);
            go(rest - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All words with `1 ≤ norm ≤ n`, in canonical order.
pub fn words_up_to_norm(n: u64) -> Vec<Word> {
    let mut out: Vec<Word> = (1..=n).flat_map(words_of_norm).collect();
    out.sort();
    out
}

/// All nonempty words over `alphabet` of length at most `max_len`.
pub fn words_over(alphabet: &[u32], max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &a in alphabet {
                next.push(w.concat(&Word::single(Letter::new(a).expect("letter"))));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// Trees and forests bucketed by a grade, built bottom-up. The grade is
/// either the norm or the node count.
#[derive(Debug, Default)]
pub struct ForestTable {
    trees: Vec<Vec<Tree>>,
    forests: Vec<Vec<Forest>>,
}

impl ForestTable {
    /// Buckets by norm, for all norms up to `max_norm`.
    pub fn new(max_norm: u64) -> Self {
        Self::build(max_norm as usize, |g| vec![(g as u32, g)])
    }

    /// Buckets by node count, decorations in `1..=max_dec`.
    pub fn by_nodes(max_nodes: usize, max_dec: u32) -> Self {
        Self::build(max_nodes, |g| {
            if g == 1 {
                (1..=max_dec).map(|d| (d, 1)).collect()
            } else {
                Vec::new()
            }
        })
    }

    /// `roots(g)` lists the root decorations whose own grade is `g`.
    fn build(max: usize, roots: impl Fn(usize) -> Vec<(u32, usize)>) -> Self {
        let mut t = ForestTable {
            trees: vec![Vec::new()],
            forests: vec![vec![Forest::empty()]],
        };
        for n in 1..=max {
            let mut trees = Vec::new();
            for g in 1..=n {
                for (dec, _) in roots(g) {
                    for children in &t.forests[n - g] {
                        trees.push(Tree::bplus(
                            Letter::new(dec).expect("letter"),
                            children.clone(),
                        ));
                    }
                }
            }
            trees.sort();
            t.trees.push(trees);
            let forests = t.build_forests(n);
            t.forests.push(forests);
        }
        t
    }

    /// Multisets of already-built trees with total grade `n`, generated as
    /// nondecreasing sequences of (grade, index) pairs.
    fn build_forests(&self, n: usize) -> Vec<Forest> {
        fn go(
            table: &ForestTable,
            rest: usize,
            min: (usize, usize),
            cur: &mut Vec<Tree>,
            out: &mut Vec<Forest>,
        ) {
            if rest == 0 {
                out.push(Forest::from_trees(cur.clone()));
                return;
            }
            for norm in min.0..=rest {
                let start = if norm == min.0 { min.1 } else { 0 };
                for idx in start..table.trees[norm].len() {
                    cur.push(table.trees[norm][idx].clone());
                    go(table, rest - norm, (norm, idx), cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, n, (1, 0), &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn trees_of_grade(&self, n: usize) -> &[Tree] {
        &self.trees[n]
    }

    pub fn forests_of_grade(&self, n: usize) -> &[Forest] {
        &self.forests[n]
    }

    /// Nonempty forests with grade at most the table's bound.
    pub fn all_nonempty(&self) -> impl Iterator<Item = &Forest> {
        self.forests.iter().skip(1).flatten()
    }
}

/// All nonempty forests with at most `max_nodes` nodes and decorations in
/// `1..=max_dec`.
pub fn forests_by_nodes(max_nodes: usize, max_dec: u32) -> Vec<Forest> {
    let mut out: Vec<Forest> = ForestTable::by_nodes(max_nodes, max_dec)
        .all_nonempty()
        .cloned()
        .collect();
    out.sort();
    out
}
