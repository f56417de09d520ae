//! Decorated non-planar rooted forests and the Connes-Kreimer coproduct.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde_json::{Map, Value};

use crate::character::Graded;
use crate::error::{Error, Result};
use crate::lincomb::{Basis, LinComb};
use crate::scalar::Q;
use crate::word::Letter;

/// A rooted tree in canonical form: the children are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    root: Letter,
    children: Forest,
    norm: u64,
    size: usize,
}

/// A multiset of trees, stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
    norm: u64,
    size: usize,
}

/// An unordered decorated tree as read from input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTree {
    pub root: u32,
    pub children: Vec<RawTree>,
}

impl Tree {
    /// `B⁺_root(children)`.
    pub fn bplus(root: Letter, children: Forest) -> Tree {
        Tree {
            root,
            norm: u64::from(root.value()) + children.norm,
            size: 1 + children.size,
            children,
        }
    }

    pub fn leaf(root: Letter) -> Tree {
        Tree::bplus(root, Forest::empty())
    }

    pub fn root(&self) -> Letter {
        self.root
    }

    pub fn children(&self) -> &Forest {
        &self.children
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn write_syntax(&self, out: &mut String) {
        out.push_str(&self.root.to_string());
        if !self.children.is_empty() {
            out.push('(');
            for (i, c) in self.children.trees.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                c.write_syntax(out);
            }
            out.push(')');
        }
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm
            .cmp(&other.norm)
            .then(self.size.cmp(&other.size))
            .then(self.root.cmp(&other.root))
            .then_with(|| self.children.trees.cmp(&other.children.trees))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Forest {
    pub fn empty() -> Self {
        Forest::default()
    }

    pub fn from_trees(mut trees: Vec<Tree>) -> Self {
        trees.sort();
        let norm = trees.iter().map(|t| t.norm).sum();
        let size = trees.iter().map(|t| t.size).sum();
        Forest { trees, norm, size }
    }

    pub fn single(tree: Tree) -> Self {
        Forest::from_trees(vec![tree])
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Sum of all node decorations.
    pub fn norm(&self) -> u64 {
        self.norm
    }

    /// Total node count.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Whether the forest is a single tree.
    pub fn is_tree(&self) -> bool {
        self.trees.len() == 1
    }

    /// Each node's decoration paired with its hat sum: the decoration plus
    /// the decorations of all nodes strictly above it in its tree.
    pub fn nodes_with_hat(&self) -> Vec<(u32, u64)> {
        fn walk(t: &Tree, out: &mut Vec<(u32, u64)>) {
            out.push((t.root.value(), t.norm));
            for c in &t.children.trees {
                walk(c, out);
            }
        }
        let mut out = Vec::with_capacity(self.size);
        for t in &self.trees {
            walk(t, &mut out);
        }
        out
    }

    /// Nodes in preorder as `(decoration, parent index)`.
    pub fn flatten(&self) -> Vec<(u32, Option<usize>)> {
        fn walk(t: &Tree, parent: Option<usize>, out: &mut Vec<(u32, Option<usize>)>) {
            let me = out.len();
            out.push((t.root.value(), parent));
            for c in &t.children.trees {
                walk(c, Some(me), out);
            }
        }
        let mut out = Vec::with_capacity(self.size);
        for t in &self.trees {
            walk(t, None, &mut out);
        }
        out
    }

    /// Rebuilds a forest from preorder `(decoration, parent)` pairs restricted
    /// to the nodes where `keep` is true; a kept node whose parent is dropped
    /// becomes a root.
    pub fn from_parent_array(nodes: &[(u32, Option<usize>)], keep: &[bool]) -> Forest {
        fn build(i: usize, nodes: &[(u32, Option<usize>)], kids: &[Vec<usize>]) -> Tree {
            let children = kids[i].iter().map(|&c| build(c, nodes, kids)).collect();
            Tree::bplus(
                Letter::new(nodes[i].0).expect("decoration"),
                Forest::from_trees(children),
            )
        }
        let mut kids = vec![Vec::new(); nodes.len()];
        let mut roots = Vec::new();
        for (i, &(_, p)) in nodes.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            match p {
                Some(p) if keep[p] => kids[p].push(i),
                _ => roots.push(i),
            }
        }
        Forest::from_trees(roots.into_iter().map(|r| build(r, nodes, &kids)).collect())
    }

    pub fn to_syntax(&self) -> String {
        if self.trees.is_empty() {
            return "-".into();
        }
        let mut s = String::new();
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            t.write_syntax(&mut s);
        }
        s
    }
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm
            .cmp(&other.norm)
            .then(self.size.cmp(&other.size))
            .then_with(|| self.trees.cmp(&other.trees))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Graded for Forest {
    fn grade(&self) -> u64 {
        self.norm
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_syntax())
    }
}

impl Basis for Forest {
    fn render(&self) -> String {
        if self.is_empty() {
            "[]".into()
        } else {
            format!("[{}]", self.to_syntax())
        }
    }

    fn json_fields(&self, out: &mut Map<String, Value>) {
        out.insert("forest".into(), Value::String(self.to_syntax()));
    }
}

/// Canonical form of an unordered decorated forest.
pub fn canonicalize(raw: &[RawTree]) -> Result<Forest> {
    fn tree(r: &RawTree) -> Result<Tree> {
        let children = r.children.iter().map(tree).collect::<Result<Vec<_>>>()?;
        Ok(Tree::bplus(
            Letter::new(r.root)?,
            Forest::from_trees(children),
        ))
    }
    Ok(Forest::from_trees(
        raw.iter().map(tree).collect::<Result<_>>()?,
    ))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("forest: {} at offset {}", msg, self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn tree(&mut self) -> Result<RawTree> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        if text.is_empty() || text == "-" {
            return Err(self.err("expected a decoration"));
        }
        let v: i64 = text.parse().map_err(|_| self.err("bad decoration"))?;
        if v < 1 || v > i64::from(u32::MAX) {
            return Err(Error::InvalidLetter(v));
        }
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() == Some(b')') {
                return Err(self.err("empty child list"));
            }
            loop {
                children.push(self.tree()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("unbalanced parentheses")),
                }
            }
        }
        Ok(RawTree {
            root: v as u32,
            children,
        })
    }
}

/// Parses `3(1,2(1)) 2`; `-` or the empty string is the empty forest.
pub fn parse_raw(s: &str) -> Result<Vec<RawTree>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split_whitespace() {
        let mut p = Parser {
            s: part.as_bytes(),
            pos: 0,
        };
        out.push(p.tree()?);
        if p.pos != part.len() {
            return Err(p.err("trailing input"));
        }
    }
    Ok(out)
}

impl FromStr for Forest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        canonicalize(&parse_raw(s)?)
    }
}

pub fn forest_product(f: &Forest, g: &Forest) -> Forest {
    let mut trees = Vec::with_capacity(f.trees.len() + g.trees.len());
    trees.extend_from_slice(&f.trees);
    trees.extend_from_slice(&g.trees);
    Forest::from_trees(trees)
}

pub type ForestTensor = LinComb<(Forest, Forest)>;

/// Componentwise product on `Hck ⊗ Hck`.
pub fn forest_tensor_product(x: &ForestTensor, y: &ForestTensor) -> ForestTensor {
    let mut out = LinComb::zero();
    for ((a1, a2), c) in x.iter() {
        for ((b1, b2), d) in y.iter() {
            out.add_term((forest_product(a1, b1), forest_product(a2, b2)), c * d);
        }
    }
    out
}

/// `Δ(B⁺_η(x)) = ∅ ⊗ B⁺_η(x) + (B⁺_η ⊗ id)Δ(x)`, extended multiplicatively.
/// The left factor holds the part containing the roots.
pub fn ck_coproduct(f: &Forest) -> ForestTensor {
    let mut acc = LinComb::basis((Forest::empty(), Forest::empty()));
    for t in &f.trees {
        acc = forest_tensor_product(&acc, &tree_coproduct(t));
    }
    acc
}

fn tree_coproduct(t: &Tree) -> ForestTensor {
    let whole = Forest::single(t.clone());
    let mut out = LinComb::basis((Forest::empty(), whole));
    for ((l, r), c) in ck_coproduct(&t.children).iter() {
        out.add_term(
            (Forest::single(Tree::bplus(t.root, l.clone())), r.clone()),
            c.clone(),
        );
    }
    out
}

/// Coproduct by admissible cuts: every subset of nodes closed under taking
/// parents gives `f|S ⊗ f|rest`.
pub fn ck_coproduct_by_cuts(f: &Forest) -> ForestTensor {
    let nodes = f.flatten();
    let n = nodes.len();
    assert!(n < 24, "cut enumeration is exponential");
    let mut out = LinComb::zero();
    for mask in 0u32..(1 << n) {
        let keep: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let closed = nodes
            .iter()
            .enumerate()
            .all(|(i, &(_, p))| !keep[i] || p.is_none_or(|p| keep[p]));
        if !closed {
            continue;
        }
        let rest: Vec<bool> = keep.iter().map(|k| !k).collect();
        out.add_term(
            (
                Forest::from_parent_array(&nodes, &keep),
                Forest::from_parent_array(&nodes, &rest),
            ),
            Q::one(),
        );
    }
    out
}
