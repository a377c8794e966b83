//! Derived operations on commutative polynomial algebras with derivations,
//! and exact verification of the standard identities they satisfy.
//!
//! A derived operation is a multilinear map `{a_1, ..., a_k} = Σ_j f_j¹(a_1)⋯f_jᵏ(a_k)`
//! where every `f` is a linear combination of compositions of derivations.
//! The crate evaluates the left/right standard polynomials
//! `s_{d,l}`, `s_{d,r}` (and the k-ary generalization) of such operations over
//! `Q`, decides or tests whether they vanish, and computes the closed-form
//! degree bounds at which they are guaranteed to vanish.

pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod diffop;
pub mod engine;
pub mod error;
pub mod operation;
pub mod parse;
pub mod poly;
pub mod problem;
pub mod rational;

pub use diffop::{binomial_in_operator, Derivation, DiffAlgebra, DiffOperator, OperatorWord};
pub use engine::{
    Caps, Counterexample, Mode, Sampler, Side, VerificationReport, Verdict,
};
pub use error::{Error, ParseError, Result};
pub use operation::{DerivedOperation, OperationOrders, Summand};
pub use parse::parse_polynomial;
pub use poly::{AlgebraContext, Monomial, Polynomial, Weight};
pub use rational::Rational;
