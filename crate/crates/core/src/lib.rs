//! Exact computations with jet polynomials.
//!
//! A jet polynomial is a polynomial with rational coefficients in the jet
//! variables `x0, x1, x2, ...`, where `xr` stands for the `r`-th derivative of
//! a loop at a base point. The space `P_n` is the set of jet polynomials `ρ1`
//! for which `x0^n` times the inversion expansion of `ρ1` (the expansion of
//! `ρ1` evaluated on the jets of `1/x`) is again a polynomial.
//!
//! Module map:
//! - [`poly`], [`laurent`]: exact data model (monomials, polynomials, Laurent terms)
//! - [`combinatorics`]: compositions, multinomials, `C_{μ,k1,k2}`, multiset
//!   permutations and the partial-sum bijection
//! - [`calculus`]: Faà di Bruno expansions, inversion expansion, partners, derivation
//! - [`solver`]: the exact linear-algebra oracle for `P_{n,d}` and `P_{n,d,l}`
//! - [`theorems`]: closed-form bases and identity verifiers
//! - [`text`]: parsing and printing of polynomials and expansions

pub mod calculus;
pub mod combinatorics;
pub mod laurent;
pub mod poly;
pub mod rational;
pub mod solver;
pub mod text;
pub mod theorems;

pub use calculus::{
    derive, inverse_derivative_expansion, inversion_expansion, partner, product_expansion,
    CompatibilityWitness, InversionEngine, Membership,
};
pub use combinatorics::{Composition, MultisetPermutation};
pub use laurent::{LaurentExpansion, LaurentKey};
pub use poly::{JetMonomial, JetPolynomial};
pub use rational::Rational;
pub use solver::{ExactMatrix, SubspaceQuery, SubspaceReport};

use thiserror::Error;

/// Errors raised by the engine. Domain outcomes such as non-membership are
/// not errors; see [`Membership`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("zero polynomial has no degree or order of derivatives")]
    ZeroPolynomial,
    #[error("query needs {candidates} candidate monomials, above the limit of {limit}")]
    SizeLimit { candidates: usize, limit: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
