//! Skeleton-relative analysis of ω-regular winning conditions.
//!
//! A [`Skeleton`] is a chromatic memory structure: a deterministic machine
//! reading colors with no acceptance condition. On top of it this crate can
//! decide prefix-independence and cycle-consistency of a winning condition,
//! synthesize a parity automaton through the cycle-competition preorder, build
//! right-congruence automata (including discounted-sum gap automata), and
//! check the results on finite parity games.

pub mod condition;
pub mod consistency;
pub mod ds;
pub mod fixtures;
pub mod dot;
mod error;
pub mod games;
pub mod io;
pub mod scalar;
pub mod skeleton;
pub mod support;
pub mod synthesis;

pub use condition::{ConditionSpec, Lasso, MullerCondition, ResidualOrder, Value};
pub use error::{Error, Result};
pub use scalar::{ExactScalar, GapValue};
pub use skeleton::{ParityAutomaton, Skeleton, Transition};
pub use support::CycleSupport;

/// Arbitrary-precision rational, the scalar used by every condition evaluator.
pub type Rational = num_rational::BigRational;
/// Fixed-width rational for callers that know their values stay small.
pub type Rational64 = num_rational::Ratio<i64>;
/// 128-bit rational, a middle ground between [`Rational64`] and [`Rational`].
pub type Rational128 = num_rational::Ratio<i128>;

/// Default cap on the number of enumerated cycle supports.
pub const DEFAULT_SUPPORT_CAP: usize = 100_000;
