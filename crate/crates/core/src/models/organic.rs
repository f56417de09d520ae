//! The organic average on `Q[x, y]`: `R(x^m y^n) = m/(m+n) x^{m+n}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::Result;
use crate::forest::Forest;
use crate::rota_baxter::{RbModel, Sampling};
use crate::scalar::{q, render_q, Tolerance, Q};
use crate::word::Word;

use super::{prefix_product, ClosedSign};

/// Sparse polynomial in `x, y` keyed by exponent pairs `(m, n)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Q::one())
    }

    pub fn monomial(m: u32, n: u32, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, n, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Q::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Q::one())
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((m, n)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(m, n));
        }
    }

    pub fn coef(&self, m: u32, n: u32) -> Q {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Q)> {
        self.terms.iter().map(|(&(m, n), c)| (m, n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (&(m, n), d) in &self.terms {
            out.add_term(m, n, d * c);
        }
        out
    }

    fn map_monomials(&self, mut f: impl FnMut(u32, u32, &Q) -> (u32, u32, Q)) -> Self {
        let mut out = Self::zero();
        for (&(m, n), c) in &self.terms {
            let (a, b, d) = f(m, n, c);
            out.add_term(a, b, d);
        }
        out
    }

    /// `P(x, x)`.
    pub fn diagonal(&self) -> Self {
        self.map_monomials(|m, n, c| (m + n, 0, c.clone()))
    }

    /// `P(y, x)`.
    pub fn swap(&self) -> Self {
        self.map_monomials(|m, n, c| (n, m, c.clone()))
    }

    /// `P(1, 1)`.
    pub fn eval_ones(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(m, n), c) in &rhs.terms {
            out.add_term(m, n, c.clone());
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        self.scale(&q(-1, 1))
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &(-rhs)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(m, n), d) in &rhs.terms {
                out.add_term(a + m, b + n, c * d);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(m, n)| (m + n, std::cmp::Reverse(m)));
        for (i, (m, n)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(m, n)];
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (m == 0 && n == 0) {
                factors.push(render_q(&mag));
            }
            for (var, e) in [("x", m), ("y", n)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    e => factors.push(format!("{}^{}", var, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `R(x^m y^n) = m/(m+n) x^{m+n}`, `R(1) = 1`.
pub fn organic_r(p: &BivarPoly) -> BivarPoly {
    p.map_monomials(|m, n, c| {
        if m + n == 0 {
            (0, 0, c.clone())
        } else {
            (m + n, 0, c * q(i64::from(m), i64::from(m + n)))
        }
    })
}

/// `θ = P(x,x)`, `σ = P(y,x)`, `γ = xy`, `Θ = P(1,1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OrganicModel;

impl OrganicModel {
    pub fn new() -> Self {
        OrganicModel
    }
}

impl RbModel for OrganicModel {
    type Elem = BivarPoly;
    type Scalar = Q;

    fn name(&self) -> String {
        "organic".into()
    }

    fn one(&self) -> BivarPoly {
        BivarPoly::one()
    }

    fn zero(&self) -> BivarPoly {
        BivarPoly::zero()
    }

    fn add(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        a + b
    }

    fn neg(&self, a: &BivarPoly) -> BivarPoly {
        -a
    }

    fn sub(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        a - b
    }

    fn mul(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        a * b
    }

    fn r(&self, a: &BivarPoly) -> BivarPoly {
        organic_r(a)
    }

    fn theta(&self, a: &BivarPoly) -> BivarPoly {
        a.diagonal()
    }

    fn sigma(&self, a: &BivarPoly) -> BivarPoly {
        a.swap()
    }

    fn gamma(&self) -> BivarPoly {
        BivarPoly::monomial(1, 1, Q::one())
    }

    fn eval(&self, a: &BivarPoly) -> Q {
        a.eval_ones()
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance::Exact
    }

    fn elem_eq(&self, a: &BivarPoly, b: &BivarPoly) -> bool {
        a == b
    }

    fn elem_json(&self, a: &BivarPoly) -> Value {
        json!({ "poly": a.to_string() })
    }

    /// Monomials `x^m y^n` with `1 ≤ m + n ≤ max_grade`.
    fn sample_elements(&self, max_grade: u64) -> Sampling<BivarPoly> {
        let d = max_grade as u32;
        let mut out = Vec::new();
        for deg in 1..=d {
            for m in (0..=deg).rev() {
                out.push(BivarPoly::monomial(m, deg - m, Q::one()));
            }
        }
        Sampling::Basis(out)
    }
}

/// `∏_k (ω_k / (2(ω_1 + … + ω_k)) − 1)`, optionally times `(−1)^n`.
pub fn organic_phi_closed(w: &Word, sign: ClosedSign) -> Result<Q> {
    prefix_product(w, sign)
}

/// `∏_i ((ω_i / 2) / ω̂_i − 1)` with `ω̂_i` the node's hat sum; the
/// alternating variant multiplies by `(−1)^{nodes}`.
pub fn organic_arb_closed(f: &Forest, sign: ClosedSign) -> Q {
    let nodes = f.nodes_with_hat();
    let mut acc = q(sign.factor(nodes.len()), 1);
    for (d, hat) in nodes {
        acc *= q(i64::from(d), 2 * hat as i64) - q(1, 1);
    }
    acc
}
