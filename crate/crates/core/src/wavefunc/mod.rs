//! Integral representations of Toda eigenfunctions: the A₁ contour formula, the two D₂ forms,
//! and the generic Dₙ recursion, plus the factorization and eigenvalue checks run on them.

mod a1;
mod d2;
mod dn;
mod eigen;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::quad::QuadError;

pub use a1::{a1_integrand, chi_a1, chi_a1_report, A1Comparison, A1_TOL};
pub use d2::{
    d2_integrand, factorization_check, psi_d2, standard_grid, y_normalization, D2Form, D2Options,
    FactorizationReport, RatioPoint,
};
pub use dn::{dn_integrand, psi_dn, separable_variables, DnIntegrand, DnOptions, DnPoint};
pub use eigen::{eigen_residual, eigen_residual_with, EigenOperator, EigenOptions, EigenReport};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum WaveError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("{0}")]
    Domain(&'static str),
}

/// One evaluated wave function value.
#[derive(Clone, Debug, PartialEq)]
pub struct WavePoint {
    pub n: usize,
    pub lambda: Vec<f64>,
    pub x: Vec<f64>,
    pub value: Complex64,
    pub error: f64,
    pub nodes: usize,
}
