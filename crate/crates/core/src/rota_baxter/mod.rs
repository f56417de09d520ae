//! Rota-Baxter algebras of weight −1 with the extra structure of an average
//! algebra, and Atkinson's recursion on them.

mod atkinson;
pub mod checks;

use std::fmt::Debug;

use serde_json::Value;

use crate::scalar::{Scalar, Tolerance};

pub use atkinson::{Atkinson, AtkinsonState};

/// Test elements a model offers to the axiom checks.
#[derive(Debug, Clone)]
pub enum Sampling<E> {
    /// An explicit finite family. Must not contain the unit.
    Basis(Vec<E>),
    /// Use the iterates reachable from words of bounded norm.
    Reachable,
}

/// `(A, R, θ, σ, Θ, γ)` with `R` an idempotent Rota-Baxter operator of
/// weight −1: `R(x)R(y) = R(R(x)y + xR(y) − xy)`.
///
/// All operations are infallible and read-only so that a model can be shared
/// across workers.
pub trait RbModel: Send + Sync + 'static {
    type Elem: Clone + Debug + Send + Sync + 'static;
    type Scalar: Scalar;

    fn name(&self) -> String;

    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn r(&self, a: &Self::Elem) -> Self::Elem;

    /// `R̃ = id − R`.
    fn r_tilde(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.r(a))
    }

    fn theta(&self, a: &Self::Elem) -> Self::Elem;
    fn sigma(&self, a: &Self::Elem) -> Self::Elem;
    fn gamma(&self) -> Self::Elem;

    /// The morphism `Θ: A → scalars`.
    fn eval(&self, a: &Self::Elem) -> Self::Scalar;

    /// The majorant `v` of the well-behaved axioms.
    fn majorant(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    /// Growth constant `k` of the well-behaved axioms.
    fn growth(&self) -> Self::Scalar {
        Self::Scalar::one()
    }

    /// Comparison used for scalar identities.
    fn tolerance(&self) -> Tolerance;

    /// Equality of elements, up to the model's rounding.
    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn elem_json(&self, a: &Self::Elem) -> Value;

    fn sample_elements(&self, max_grade: u64) -> Sampling<Self::Elem>;
}
