//! Labeled 2-dimensional cobordisms and their evaluation through commutative
//! Frobenius algebras carrying an abelian group action.
//!
//! Cobordisms whose components carry labels in an abelian group `A` form a
//! symmetric monoidal category. A monoidal representation of that category is
//! the same thing as an A-Frobenius algebra: a commutative Frobenius algebra
//! with an action of `A` by module maps. [`tqft::Evaluator`] builds the
//! representation from the algebra and [`tqft::extract`] recovers the algebra,
//! all in exact arithmetic over the Gaussian rationals.

pub mod cli;
pub mod cobordism;
pub mod dsl;
pub mod frobenius;
pub mod group;
pub mod linalg;
pub mod sample;
pub mod tqft;
