//! Scalar targets of characters: exact rationals or floating point.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Q = BigRational;

/// Shorthand for the rational `num/den`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Renders a rational as `p` or `p/q`.
pub fn render_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_json(x: &Q) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

pub fn q_from_json(v: &Value) -> Option<Q> {
    let num: BigInt = v.get("num")?.as_str()?.parse().ok()?;
    let den: BigInt = v.get("den")?.as_str()?.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Exact,
    Approximate,
}

/// Values a character can take.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const KIND: TargetKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_q(x: &Q) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn render(&self) -> String;
    fn to_json(&self) -> Value;

    fn from_i64(n: i64) -> Self {
        Self::from_q(&q_int(n))
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Scalar for Q {
    const KIND: TargetKind = TargetKind::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn render(&self) -> String {
        render_q(self)
    }
    fn to_json(&self) -> Value {
        q_to_json(self)
    }
}

impl Scalar for f64 {
    const KIND: TargetKind = TargetKind::Approximate;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_q(x: &Q) -> Self {
        ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn render(&self) -> String {
        format!("{:.6}", self)
    }
    fn to_json(&self) -> Value {
        json!(self)
    }
}

/// How two values are compared in checks.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum Tolerance {
    Exact,
    Abs(f64),
}

impl Tolerance {
    pub fn agree<S: Scalar>(&self, a: &S, b: &S) -> bool {
        match self {
            Tolerance::Exact => a == b,
            Tolerance::Abs(t) => (a.clone() - b.clone()).to_f64().abs() <= *t,
        }
    }

    /// `a <= b`, up to the tolerance.
    pub fn le<S: Scalar>(&self, a: &S, b: &S) -> bool {
        match self {
            Tolerance::Exact => a <= b,
            Tolerance::Abs(t) => a.to_f64() <= b.to_f64() + t,
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Tolerance::Exact => 0.0,
            Tolerance::Abs(t) => *t,
        }
    }
}
