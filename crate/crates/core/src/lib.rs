//! Exact computations with exceptional modules over canonical algebras.
//!
//! The crate models a canonical algebra Λ(p, λ) as a star-shaped quiver with
//! relations, represents modules by exact rational matrices, computes Hom and
//! Ext¹ through a linear δ-model, builds the explicit exceptional modules of
//! small rank, and assembles larger exceptional modules by Schofield
//! induction from orthogonal exceptional pairs and exceptional Kronecker
//! representations.
//!
//! All types are generic over a [`Scalar`] field; [`Rational`] is the
//! arbitrary-precision default and the aliases below fix it.

pub mod algebra;
pub mod error;
pub mod homext;
pub mod io;
pub mod kronecker;
pub mod linalg;
pub mod random;
pub mod representation;
pub mod scalar;
pub mod schofield;
pub mod small_rank;
pub mod suite;
pub mod weight;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use weight::{LElement, WeightSequence};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals; overflow is not checked.
pub type Rational64 = num_rational::Ratio<i64>;

pub type Matrix = linalg::Matrix<Rational>;
pub type CanonicalAlgebra = algebra::CanonicalAlgebra<Rational>;
pub type Rep = representation::Rep<Rational>;
pub type ThetaRep = kronecker::ThetaRep<Rational>;
