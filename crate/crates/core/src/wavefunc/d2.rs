use core::f64::consts::PI;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{WaveError, WavePoint};
use crate::quad::{
    bessel_k_imag_order, check_admissible, complex_gamma, integrate_contour_1d, integrate_nested_err, ContourSpec,
    ExpIntegrand, ExpTerm, IntegrandShape, NodeMap, PowerFactor,
};

/// Which integral representation of the D₂ wave function to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D2Form {
    /// Integration over `x₁₁` and `z₁₁`, with the power factor in closed form.
    TwoD,
    /// Additional integration over `y` producing the power factor.
    ThreeD,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct D2Options {
    pub form: D2Form,
    pub tol: f64,
    pub initial_step: f64,
    pub min_levels: u32,
}

impl Default for D2Options {
    fn default() -> Self {
        D2Options { form: D2Form::TwoD, tol: 1e-10, initial_step: 0.5, min_levels: 1 }
    }
}

impl D2Options {
    pub fn three_d() -> Self {
        D2Options { form: D2Form::ThreeD, ..Default::default() }
    }

    fn contour(&self, offset_pi: f64) -> ContourSpec {
        ContourSpec::line(offset_pi)
            .with_tol(self.tol)
            .with_step(self.initial_step)
            .with_levels(self.min_levels, self.min_levels.max(12))
    }
}

/// D₂ integrand in the variables `[x₁₁, z₁₁]` (two-variable form).
pub fn d2_integrand(l1: f64, l2: f64, x21: f64, x22: f64) -> ExpIntegrand {
    let one = Complex64::new(1.0, 0.0);
    let e = |a: f64| Complex64::new(a.exp(), 0.0);
    let mut f = ExpIntegrand::new(2);
    f.constant = Complex64::new(0.0, l2 * (x21 + x22));
    f.shape.linear = vec![Complex64::new(0.0, l1 + l2), Complex64::new(0.0, -2.0 * l2)];
    f.shape.terms = vec![
        ExpTerm::new(e(-x21), vec![(1, 1.0)]),
        ExpTerm::new(e(x22), vec![(1, -1.0)]),
        ExpTerm::new(e(-x22), vec![(1, -1.0)]),
        ExpTerm::new(one, vec![(0, 1.0), (1, -1.0)]),
        ExpTerm::new(one, vec![(0, -1.0), (1, -1.0)]),
    ];
    f.powers.push(PowerFactor {
        exponent: Complex64::new(0.0, 2.0 * l2),
        base: vec![ExpTerm::new(e(-x22), vec![]), ExpTerm::new(one, vec![(0, -1.0)])],
    });
    f
}

/// `∫_{Im y = π} e^{2iλ₂y} exp{A e^{−y}} dy = e^{−2πλ₂} Γ(−2iλ₂) A^{2iλ₂}` for `A > 0`; returns the
/// constant in front of `A^{2iλ₂}`.
pub fn y_normalization(l2: f64) -> Result<Complex64, WaveError> {
    if l2 == 0.0 {
        return Err(WaveError::Domain("the y-integral diverges at lambda2 = 0"));
    }
    Ok(complex_gamma(Complex64::new(0.0, -2.0 * l2))? * (-2.0 * PI * l2).exp())
}

fn y_contour(l2: f64, tol: f64) -> ContourSpec {
    ContourSpec::line(1.0)
        .with_tilt(0.0, l2.signum())
        .with_map(NodeMap::SinhDe)
        .with_tol(tol)
        .with_step(0.5)
}

fn check_range(l: &[f64], x: &[f64]) -> Result<(), WaveError> {
    if x.iter().any(|v| v.abs() > 2.0) {
        return Err(WaveError::Domain("positions are validated for |x| <= 2"));
    }
    if l.iter().any(|v| !v.is_finite()) {
        return Err(WaveError::Domain("spectral values must be finite"));
    }
    Ok(())
}

/// D₂ wave function at `(x₂₁, x₂₂)`, normalized as the two-variable integral.
pub fn psi_d2(l1: f64, l2: f64, x21: f64, x22: f64, opts: &D2Options) -> Result<WavePoint, WaveError> {
    check_range(&[l1, l2], &[x21, x22])?;
    let f = d2_integrand(l1, l2, x21, x22);
    let contours = [opts.contour(0.0), opts.contour(1.0)];
    check_admissible(&f.shape, &contours)?;
    let mut y_nodes = 0usize;
    let r = match opts.form {
        D2Form::TwoD => integrate_nested_err(|v| Ok((f.eval(v)?, 0.0)), &contours)?,
        D2Form::ThreeD => {
            let norm = y_normalization(l2)?;
            let mut rest = f.clone();
            rest.powers.clear();
            let y_shape = IntegrandShape {
                nvars: 1,
                terms: vec![ExpTerm::new(Complex64::new(1.0, 0.0), vec![(0, -1.0)])],
                linear: vec![Complex64::new(0.0, 2.0 * l2)],
            };
            let inner_tol = opts.tol * 1e-2;
            check_admissible(&y_shape, &[y_contour(l2, inner_tol)])?;
            let mut cached: Option<(f64, Complex64, f64)> = None;
            integrate_nested_err(
                |v| {
                    let x11 = v[0].re;
                    let (y_val, y_err) = match cached {
                        Some((at, val, err)) if at == x11 => (val, err),
                        _ => {
                            let a = (-x22).exp() + (-x11).exp();
                            let spec = y_contour(l2, inner_tol).with_center(a.ln());
                            let kappa = Complex64::new(0.0, 2.0 * l2);
                            let y = integrate_contour_1d(|y| Ok((kappa * y + (-y).exp() * a).exp()), &spec)?;
                            cached = Some((x11, y.value, y.abs_error));
                            y_nodes += y.nodes_used;
                            (y.value, y.abs_error)
                        }
                    };
                    let base = rest.eval(v)? / norm;
                    Ok((base * y_val, base.norm() * y_err))
                },
                &contours,
            )?
        }
    };
    Ok(WavePoint {
        n: 2,
        lambda: vec![l1, l2],
        x: vec![x21, x22],
        value: r.value,
        error: r.abs_error,
        nodes: r.nodes_used + y_nodes,
    })
}

/// Ratio of the wave function to a product of Macdonald functions at one grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioPoint {
    pub xi: f64,
    pub eta: f64,
    pub psi: Complex64,
    pub error: f64,
    /// Against `K_{i(λ₂+λ₁)}(2e^{ξ/2}) K_{i(λ₂−λ₁)}(2e^{−η/2})`.
    pub ratio: Complex64,
    /// Against the same product with both orders halved.
    pub halved_ratio: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationReport {
    pub lambda: [f64; 2],
    pub points: Vec<RatioPoint>,
    pub mean: Complex64,
    /// Root-mean-square deviation of the ratio divided by `|mean|`.
    pub spread: f64,
    pub halved_mean: Complex64,
    pub halved_spread: f64,
    /// `4e^{2πλ₂}`, the constant expected for the two-variable normalization.
    pub expected: Complex64,
    /// Measured constant rescaled to the three-variable normalization.
    pub three_d_constant: Option<Complex64>,
    /// `4e^{−2πλ₂}Γ(2iλ₂)`, closed-form candidate for the constant in the three-variable normalization.
    pub candidate: Option<Complex64>,
}

impl FactorizationReport {
    pub fn is_constant(&self, tol: f64) -> bool {
        self.spread <= tol
    }

    /// `three_d_constant / candidate`, when both exist.
    pub fn candidate_discrepancy(&self) -> Option<Complex64> {
        Some(self.three_d_constant? / self.candidate?)
    }
}

/// 3×3 grid on `[−1, 1]²` in `(ξ, η)`.
pub fn standard_grid() -> Vec<(f64, f64)> {
    let ticks = [-1.0, 0.0, 1.0];
    ticks.iter().flat_map(|&a| ticks.iter().map(move |&b| (a, b))).collect()
}

fn stats(values: &[Complex64]) -> (Complex64, f64) {
    let n = values.len() as f64;
    let mean: Complex64 = values.iter().sum::<Complex64>() / n;
    let var = values.iter().map(|r| (r - mean).norm_sqr()).sum::<f64>() / n;
    (mean, var.sqrt() / mean.norm())
}

/// Evaluates the D₂ wave function on `grid` (pairs `(ξ, η)`, `ξ = x₂₂ − x₂₁`, `η = x₂₂ + x₂₁`)
/// and tests that its ratio to a product of two Macdonald functions is constant.
pub fn factorization_check(
    l1: f64,
    l2: f64,
    grid: &[(f64, f64)],
    opts: &D2Options,
) -> Result<FactorizationReport, WaveError> {
    if grid.is_empty() {
        return Err(WaveError::Domain("empty grid"));
    }
    let mut points = Vec::with_capacity(grid.len());
    for &(xi, eta) in grid {
        let (x21, x22) = ((eta - xi) / 2.0, (eta + xi) / 2.0);
        let w = psi_d2(l1, l2, x21, x22, opts)?;
        let a = (xi / 2.0).exp() * 2.0;
        let b = (-eta / 2.0).exp() * 2.0;
        let k = bessel_k_imag_order(l2 + l1, a)? * bessel_k_imag_order(l2 - l1, b)?;
        let kh = bessel_k_imag_order((l2 + l1) / 2.0, a)? * bessel_k_imag_order((l2 - l1) / 2.0, b)?;
        points.push(RatioPoint { xi, eta, psi: w.value, error: w.error, ratio: w.value / k, halved_ratio: w.value / kh });
    }
    let (mean, spread) = stats(&points.iter().map(|p| p.ratio).collect::<Vec<_>>());
    let (halved_mean, halved_spread) = stats(&points.iter().map(|p| p.halved_ratio).collect::<Vec<_>>());
    let (three_d_constant, candidate) = if l2 != 0.0 {
        let q = complex_gamma(Complex64::new(0.0, 2.0 * l2))? * (4.0 * (-2.0 * PI * l2).exp());
        (Some(mean * y_normalization(l2)?), Some(q))
    } else {
        (None, None)
    };
    Ok(FactorizationReport {
        lambda: [l1, l2],
        points,
        mean,
        spread,
        halved_mean,
        halved_spread,
        expected: Complex64::new(4.0 * (2.0 * PI * l2).exp(), 0.0),
        three_d_constant,
        candidate,
    })
}
