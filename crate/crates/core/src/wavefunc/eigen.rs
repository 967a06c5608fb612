use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::d2::{psi_d2, D2Options};
use super::WaveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenOperator {
    /// `−½(∂²₂₁ + ∂²₂₂) + e^{x₂₂−x₂₁} + e^{−x₂₂−x₂₁}`.
    Quadratic,
    /// Product of the two A₁ operators in `ξ = x₂₂ − x₂₁` and `η = x₂₂ + x₂₁`.
    Quartic,
}

impl EigenOperator {
    pub fn eigenvalue(self, l1: f64, l2: f64) -> f64 {
        match self {
            EigenOperator::Quadratic => 0.5 * (l1 * l1 + l2 * l2),
            EigenOperator::Quartic => {
                let (n1, n2) = ((l2 + l1) / 2.0, (l2 - l1) / 2.0);
                0.25 * n1 * n1 * n2 * n2
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions {
    pub fd_step: f64,
    pub quad: D2Options,
}

impl EigenOptions {
    /// Quadrature pinned to a fixed refinement depth so that every stencil point uses the
    /// same rule and the finite differences see a smooth function.
    pub fn for_operator(op: EigenOperator) -> Self {
        let quad = D2Options { tol: 1e-9, min_levels: 4, ..Default::default() };
        let fd_step = match op {
            EigenOperator::Quadratic => 1e-3,
            EigenOperator::Quartic => 2e-2,
        };
        EigenOptions { fd_step, quad }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenReport {
    pub operator: EigenOperator,
    pub eigenvalue: f64,
    pub psi: Complex64,
    /// `|HΨ − EΨ| / |Ψ|`; `None` when `Ψ` vanishes at the centre.
    pub residual: Option<f64>,
    /// Round-off floor of the stencil relative to `|Ψ|`.
    pub noise_floor: f64,
    /// Largest quadrature error estimate among the samples.
    pub sample_error: f64,
}

impl EigenReport {
    pub fn is_degenerate(&self) -> bool {
        self.residual.is_none()
    }

    /// True when the residual cannot be resolved below `target` with the chosen step.
    pub fn is_noise_limited(&self, target: f64) -> bool {
        self.noise_floor > target
    }
}

/// Relative round-off of one quadrature sample.
const ROUNDOFF: f64 = 64.0 * f64::EPSILON;

const SECOND: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];

fn weight_sum() -> f64 {
    SECOND.iter().map(|w| w.abs()).sum()
}

/// Applies the operator to samples of `sampler(x₂₁, x₂₂) -> (value, abs_error)` at `point`.
pub fn eigen_residual_with<S>(
    mut sampler: S,
    op: EigenOperator,
    l1: f64,
    l2: f64,
    point: (f64, f64),
    h: f64,
) -> Result<EigenReport, WaveError>
where
    S: FnMut(f64, f64) -> Result<(Complex64, f64), WaveError>,
{
    if !(h > 0.0) {
        return Err(WaveError::Domain("fd step must be positive"));
    }
    let e = op.eigenvalue(l1, l2);
    let (x21, x22) = point;
    let mut max_err: f64 = 0.0;
    let mut max_abs: f64 = 0.0;
    let (psi, h_psi, scale) = match op {
        EigenOperator::Quadratic => {
            let mut at = |a: f64, b: f64| -> Result<Complex64, WaveError> {
                let (v, err) = sampler(a, b)?;
                max_err = max_err.max(err);
                max_abs = max_abs.max(v.norm());
                Ok(v)
            };
            let psi = at(x21, x22)?;
            let (mut d21, mut d22) = (Complex64::default(), Complex64::default());
            for (j, w) in SECOND.iter().enumerate() {
                let o = (j as f64 - 2.0) * h;
                if j != 2 {
                    d21 += at(x21 + o, x22)? * *w;
                    d22 += at(x21, x22 + o)? * *w;
                } else {
                    d21 += psi * *w;
                    d22 += psi * *w;
                }
            }
            let v = (x22 - x21).exp() + (-x22 - x21).exp();
            let h_psi = -(d21 + d22) / (2.0 * h * h) + psi * v;
            (psi, h_psi, weight_sum() / (h * h) + v)
        }
        EigenOperator::Quartic => {
            let (xi, eta) = (x22 - x21, x22 + x21);
            let mut g = [[Complex64::default(); 5]; 5];
            for (a, row) in g.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    let (p, q) = (xi + (a as f64 - 2.0) * h, eta + (b as f64 - 2.0) * h);
                    let (v, err) = sampler((q - p) / 2.0, (q + p) / 2.0)?;
                    max_err = max_err.max(err);
                    max_abs = max_abs.max(v.norm());
                    *cell = v;
                }
            }
            let psi = g[2][2];
            let (mut dxx, mut dyy, mut dxxyy) = (Complex64::default(), Complex64::default(), Complex64::default());
            for a in 0..5 {
                dxx += g[a][2] * SECOND[a];
                dyy += g[2][a] * SECOND[a];
                for b in 0..5 {
                    dxxyy += g[a][b] * (SECOND[a] * SECOND[b]);
                }
            }
            let (h2, h4) = (h * h, h * h * h * h);
            let h_psi = (dxxyy / h4 - dxx * ((-eta).exp() / h2) - dyy * (xi.exp() / h2) + psi * (xi - eta).exp()) * 0.25;
            let w = weight_sum();
            (psi, h_psi, 0.25 * (w * w / h4 + w * ((-eta).exp() + xi.exp()) / h2 + (xi - eta).exp()))
        }
    };
    let norm = psi.norm();
    let residual = if norm == 0.0 { None } else { Some((h_psi - psi * e).norm() / norm) };
    let noise_floor = if norm == 0.0 { f64::INFINITY } else { (scale + e.abs()) * ROUNDOFF * max_abs / norm };
    Ok(EigenReport { operator: op, eigenvalue: e, psi, residual, noise_floor, sample_error: max_err })
}

/// Finite-difference eigenvalue residual of the D₂ wave function at `point = (x₂₁, x₂₂)`.
pub fn eigen_residual(
    op: EigenOperator,
    l1: f64,
    l2: f64,
    point: (f64, f64),
    opts: &EigenOptions,
) -> Result<EigenReport, WaveError> {
    let q = opts.quad;
    eigen_residual_with(
        |a, b| {
            let w = psi_d2(l1, l2, a, b, &q)?;
            Ok((w.value, w.error))
        },
        op,
        l1,
        l2,
        point,
        opts.fd_step,
    )
}
