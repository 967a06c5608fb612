//! Symbolic and numeric machinery for open Toda chains of types A(2)_{2n-1}, C_n and D_n.
//!
//! - [`laurent`]: exact Laurent polynomials over Gaussian rationals, matrices, determinants.
//! - [`lax`]: Lax matrices, their factorization and intertwining matrices.
//! - [`kernels`]: generating functions of integral kernels and Hamiltonian intertwining checks.
//! - [`quad`]: contour quadrature and special functions.
//! - [`wavefunc`]: integral representations of eigenfunctions.
#![no_std]

extern crate alloc;

pub mod kernels;
pub mod laurent;
pub mod lax;
pub mod quad;
pub mod report;
pub mod wavefunc;

pub use report::{IdentityReport, Residual};
