//! Exact symbolic calculus for symmetrized products in free associative
//! algebras, Poisson-bracket relation systems, and quantization by
//! symmetrization.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating-point mode. The crate is organized around:
//!
//! * [`freealg`] — words, noncommutative polynomials, commutators,
//!   symmetrized products `Sym_k`, abelianization;
//! * [`relations`] — structure-constant systems (constant / linear /
//!   general brackets), PBW normal forms, relation-substituting
//!   commutators;
//! * [`poisson`] — commutative polynomials and Leibniz representations of
//!   Poisson brackets, Casimir checks;
//! * [`symmetrization`] — the symmetrization map, bracket correspondence
//!   and the quantization pipeline;
//! * [`identities`] — mechanical verification of the pure free-algebra
//!   identities (Bernoulli coefficients, insertion/correction formulas,
//!   Wick pairing expansions, Moyal bracket);
//! * [`expr`] — the commutative expression grammar used by the CLI and
//!   the algebra file format.
//!
//! With the default `parallel` feature the combinatorial inner loops run
//! on rayon; disabling it yields a fully sequential build with identical
//! results.

pub mod coeff;
pub mod error;
pub mod expr;
pub mod freealg;
pub mod identities;
pub(crate) mod par;
pub mod poisson;
pub mod relations;
pub mod sample;
pub mod scalar;
pub mod symmetrization;

pub use error::{AlgebraError, Result};
pub use scalar::Scalar;

/// Maximum word length produced by any product. Longer results are refused
/// with [`AlgebraError::DegreeCap`] rather than attempted.
pub const DEGREE_CAP: usize = 12;

/// Maximum number of factors accepted by `Sym_k`. At 8 the full expansion
/// has 40320 orderings, which is tractable; well beyond that it is not.
pub const SYM_CAP: usize = 8;
