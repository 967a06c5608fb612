use core::f64::consts::PI;

use alloc::vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::WaveError;
use crate::quad::{
    bessel_k_imag_order, check_admissible, integrate_contour_1d, ContourSpec, ExpIntegrand, ExpTerm, QuadResult,
};

pub const A1_TOL: f64 = 1e-12;

/// `e^{2iν(x+y)} exp{e^{−x} + e^{x+2y}}` in the single variable `x`.
pub fn a1_integrand(nu: f64, y: f64) -> ExpIntegrand {
    let mut f = ExpIntegrand::new(1);
    f.constant = Complex64::new(0.0, 2.0 * nu * y);
    f.shape.linear[0] = Complex64::new(0.0, 2.0 * nu);
    f.shape.terms.push(ExpTerm::new(Complex64::new(1.0, 0.0), vec![(0, -1.0)]));
    f.shape.terms.push(ExpTerm::new(Complex64::new((2.0 * y).exp(), 0.0), vec![(0, 1.0)]));
    f
}

/// `−(e^{2πν}/2) ∫_{Im x = π} e^{2iν(x+y)} exp{e^{−x} + e^{x+2y}} dx`.
pub fn chi_a1(nu: f64, y: f64) -> Result<QuadResult, WaveError> {
    if nu.abs() > 5.0 || y.abs() > 3.0 {
        return Err(WaveError::Domain("chi_a1 is validated for |nu| <= 5, |y| <= 3"));
    }
    let f = a1_integrand(nu, y);
    // L1 mass of the integrand on the contour is e^{−2πν}·2K₀(2e^y).
    let mass = (-2.0 * PI * nu).exp() * 2.0 * bessel_k_imag_order(0.0, 2.0 * y.exp())?;
    let c = ContourSpec { abs_tol: 64.0 * f64::EPSILON * mass, ..ContourSpec::line(1.0).with_tol(A1_TOL).with_center(-y) };
    check_admissible(&f.shape, &[c])?;
    let r = integrate_contour_1d(|x| f.eval(&[x]), &c)?;
    let pre = -(2.0 * PI * nu).exp() / 2.0;
    Ok(QuadResult { value: r.value * pre, abs_error: r.abs_error * pre.abs(), ..r })
}

/// Contour value against `K_{2iν}(2e^y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct A1Comparison {
    pub nu: f64,
    pub y: f64,
    pub value: Complex64,
    pub error: f64,
    pub bessel: f64,
    pub ratio: Complex64,
    pub nodes: usize,
}

pub fn chi_a1_report(nu: f64, y: f64) -> Result<A1Comparison, WaveError> {
    let r = chi_a1(nu, y)?;
    let bessel = bessel_k_imag_order(2.0 * nu, 2.0 * y.exp())?;
    Ok(A1Comparison { nu, y, value: r.value, error: r.abs_error, bessel, ratio: r.value / bessel, nodes: r.nodes_used })
}
