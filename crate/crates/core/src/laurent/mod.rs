//! Exact Laurent polynomials over the Gaussian rationals, matrices over them, and their
//! fraction field.

mod coeff;
mod matrix;
mod monomial;
mod poly;
mod rational;
mod var;

pub use coeff::GaussianRational;
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use poly::{Bindings, LaurentPoly};
pub use rational::RationalExpr;
pub use var::Var;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("substituting {0} into a negative power requires fraction field")]
    RequiresFractionField(Var),
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse polynomial text: {0}")]
    Parse(String),
}
