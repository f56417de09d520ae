//! Finite linear combinations with exact rational coefficients.

use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::scalar::{q_from_json, q_to_json, render_q, Q};
use crate::word::Word;

/// Basis elements that can be rendered and serialized inside a [`LinComb`].
pub trait Basis: Ord + Clone {
    fn render(&self) -> String;
    fn json_fields(&self, out: &mut Map<String, Value>);
}

impl Basis for Word {
    fn render(&self) -> String {
        self.to_string()
    }

    fn json_fields(&self, out: &mut Map<String, Value>) {
        out.insert("word".into(), json!(self.values()));
    }
}

impl<A: Basis, B: Basis> Basis for (A, B) {
    fn render(&self) -> String {
        format!("{} ⊗ {}", self.0.render(), self.1.render())
    }

    fn json_fields(&self, out: &mut Map<String, Value>) {
        let mut left = Map::new();
        self.0.json_fields(&mut left);
        let mut right = Map::new();
        self.1.json_fields(&mut right);
        out.insert("left".into(), Value::Object(left));
        out.insert("right".into(), Value::Object(right));
    }
}

/// A formal sum `Σ c_b b`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Q>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Q::one())
    }

    pub fn term(b: B, c: Q) -> Self {
        let mut x = Self::zero();
        x.add_term(b, c);
        x
    }

    pub fn add_term(&mut self, b: B, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<B>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (b, d) in &other.terms {
            self.add_term(b.clone(), d * c);
        }
    }

    pub fn coef(&self, b: &B) -> Q {
        self.terms.get(b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Q)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Re-keys every term through `f`, summing collisions.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Extends a basis map `f` linearly.
    pub fn flat_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the coefficients.
    pub fn coefficient_sum(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    /// Sum of absolute values of the coefficients, i.e. the number of basis
    /// elements counted with multiplicity when all coefficients are integers.
    pub fn weight(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c.abs())
    }
}

impl<B: Ord + Clone> FromIterator<(B, Q)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (b, c) in rhs.terms {
            self.add_term(b, -c);
        }
        self
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = Self;

    fn neg(self) -> Self {
        LinComb {
            terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect(),
        }
    }
}

impl<B: Basis> LinComb<B> {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(b, c)| {
                let mut m = Map::new();
                b.json_fields(&mut m);
                m.insert("coef".into(), q_to_json(c));
                Value::Object(m)
            })
            .collect();
        json!({ "terms": terms })
    }
}

impl<B: Basis> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{}", b.render())?;
            } else {
                write!(f, "{}*{}", render_q(&mag), b.render())?;
            }
        }
        Ok(())
    }
}

impl LinComb<Word> {
    /// Parses the JSON rendering produced by [`LinComb::to_json`].
    pub fn words_from_json(v: &Value) -> Option<Self> {
        let mut out = LinComb::zero();
        for t in v.get("terms")?.as_array()? {
            let letters: Vec<u32> = t
                .get("word")?
                .as_array()?
                .iter()
                .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()))
                .collect::<Option<_>>()?;
            let w = Word::from_slice(&letters).ok()?;
            out.add_term(w, q_from_json(t.get("coef")?)?);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn w(v: &[u32]) -> Word {
        Word::from_slice(v).unwrap()
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut x = LinComb::basis(w(&[1]));
        x.add_term(w(&[1]), q(-1, 1));
        assert!(x.is_zero());
        x.add_term(w(&[2]), q(0, 1));
        assert_eq!(x.len(), 0);
    }

    #[test]
    fn renders_in_canonical_order() {
        let x: LinComb<Word> = [
            (w(&[2, 1]), q(1, 1)),
            (w(&[3]), q(-3, 8)),
            (w(&[1, 2]), q(2, 1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(x.to_string(), "-3/8*(3) + 2*(1,2) + (2,1)");
        assert_eq!(LinComb::<Word>::zero().to_string(), "0");
    }

    #[test]
    fn json_shape_and_round_trip() {
        let x = LinComb::term(w(&[1, 2]), q(1, 1));
        assert_eq!(
            x.to_json().to_string(),
            r#"{"terms":[{"coef":{"den":"1","num":"1"},"word":[1,2]}]}"#
        );
        let y = LinComb::term(w(&[3]), q(-7, 3)) + x;
        assert_eq!(LinComb::words_from_json(&y.to_json()), Some(y));
    }
}
