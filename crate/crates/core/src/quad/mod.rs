//! Quadrature along horizontal and gently bent complex contours.
//!
//! Integrals of the form `∫ exp(Σ c·e^{linear form} + linear phase)` converge only after each
//! variable is moved off the real axis; [`check_admissible`] decides whether a given set of
//! offsets does that, and the trapezoid engine then converges doubly exponentially.

mod admissible;
mod contour;
mod engine;
mod integrand;
mod special;

use alloc::string::String;

use num_complex::Complex64;

pub use admissible::{check_admissible, choose_offsets, ExpTerm, IntegrandShape};
pub use contour::{ContourSpec, NodeMap};
pub use engine::{
    integrate_contour_1d, integrate_contour_1d_err, integrate_nested, integrate_nested_err, integrate_nested_with, QuadResult,
    NESTED_TIGHTENING,
};
pub use integrand::{ExpIntegrand, PowerFactor};
pub use special::{bessel_k_imag_order, complex_gamma};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("no convergence at level {level} after {nodes} nodes: last {estimate}, previous {previous}")]
    NonConvergence { level: usize, estimate: Complex64, previous: Complex64, nodes: usize },
    #[error("node budget exhausted at level {level} ({nodes} nodes)")]
    Budget { level: usize, nodes: usize },
    #[error("inadmissible contour for variable {variable}: {reason}")]
    Inadmissible { variable: usize, reason: String },
    #[error("power factor base {at} on the branch cut")]
    BranchCut { at: Complex64 },
    #[error("non-finite integrand at level {level}, point {at}")]
    NonFinite { level: usize, at: Complex64 },
    #[error("pole at {at}")]
    Pole { at: Complex64 },
    #[error("{what}")]
    Domain { what: &'static str },
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn gaussian() {
        let c = ContourSpec::line(0.0).with_tol(1e-13).with_map(NodeMap::SinhDe);
        let r = integrate_contour_1d(|t| Ok((-t * t).exp()), &c).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-12, "{:?}", r);
    }

    #[test]
    fn product_is_pi() {
        let c = ContourSpec::line(0.0).with_tol(1e-12).with_map(NodeMap::SinhDe);
        let r = integrate_nested(|v| Ok((-v[0] * v[0] - v[1] * v[1]).exp()), &[c, c]).unwrap();
        assert!((r.value.re - PI).abs() < 1e-11);
    }

    #[test]
    fn gamma_values() {
        let one = complex_gamma(Complex64::new(1.0, 0.0)).unwrap();
        assert!((one.re - 1.0).abs() < 1e-14);
        let five = complex_gamma(Complex64::new(5.0, 0.0)).unwrap();
        assert!((five.re - 24.0).abs() < 1e-12);
        assert!(complex_gamma(Complex64::new(-2.0, 0.0)).is_err());
    }

    #[test]
    fn bessel_rejects_nonpositive() {
        assert!(bessel_k_imag_order(1.0, 0.0).is_err());
    }
}
