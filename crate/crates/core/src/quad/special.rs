use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::contour::ContourSpec;
use super::engine::integrate_contour_1d;
use super::QuadError;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

/// Euler Γ for complex argument.
pub fn complex_gamma(s: Complex64) -> Result<Complex64, QuadError> {
    if is_pole(s) {
        return Err(QuadError::Pole { at: s });
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(QuadError::NonFinite { level: 0, at: s });
    }
    if s.re < 0.5 {
        let sin = (s * PI).sin();
        let g = complex_gamma(Complex64::new(1.0, 0.0) - s)?;
        return Ok(Complex64::new(PI, 0.0) / (sin * g));
    }
    let z = s - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log = (z + 0.5) * t.ln() - t;
    Ok(log.exp() * a * (2.0 * PI).sqrt())
}

/// Macdonald function of imaginary order, `K_{iμ}(x) = ∫₀^∞ e^{−x cosh t} cos(μt) dt`.
pub fn bessel_k_imag_order(mu: f64, x: f64) -> Result<f64, QuadError> {
    if !(x > 0.0) || !x.is_finite() || !mu.is_finite() {
        return Err(QuadError::Domain { what: "bessel_k_imag_order needs finite mu and x > 0" });
    }
    let spec = ContourSpec::line(0.0).with_tol(1e-14).with_levels(2, 14);
    let mass = integrate_contour_1d(|t| Ok(Complex64::new((-x * t.re.cosh()).exp(), 0.0)), &spec)?;
    let spec = ContourSpec { abs_tol: 64.0 * f64::EPSILON * mass.value.re, tol: 1e-13, ..spec };
    let r = integrate_contour_1d(
        |t| Ok(Complex64::new((-x * t.re.cosh()).exp() * (mu * t.re).cos(), 0.0)),
        &spec,
    )?;
    Ok(0.5 * r.value.re)
}
