//! Numeric evaluations of wave functions.

use std::time::Instant;

use num_complex::Complex64;

use qtoda_core::wavefunc::{
    chi_a1_report, eigen_residual, factorization_check, psi_d2, psi_dn, D2Form, D2Options, DnOptions, EigenOperator,
    EigenOptions,
};
use rayon::prelude::*;

use crate::report::{EigenRecord, FactorizationRecord, RatioRecord, WaveRecord};
use crate::{usage, CliError};

/// Options shared by every evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Common {
    pub tol: Option<f64>,
    /// Report zero instead of wall-clock seconds, for reproducible output.
    pub no_timings: bool,
}

impl Common {
    fn seconds(&self, t: Instant) -> f64 {
        if self.no_timings {
            0.0
        } else {
            t.elapsed().as_secs_f64()
        }
    }

    fn tol_or(&self, default: f64) -> Result<f64, CliError> {
        match self.tol {
            Some(t) if !(t > 0.0 && t < 1.0) => Err(usage("--tol must lie in (0, 1)")),
            Some(t) => Ok(t),
            None => Ok(default),
        }
    }
}

pub fn a1(nu: f64, y: f64, c: &Common) -> Result<WaveRecord, CliError> {
    if c.tol.is_some() {
        return Err(usage("a1 runs at a fixed tolerance"));
    }
    let t = Instant::now();
    let r = chi_a1_report(nu, y)?;
    let mut rec = WaveRecord::new("a1", 1, vec![nu], vec![y]);
    rec.value_re = r.value.re;
    rec.value_im = r.value.im;
    rec.error = r.error;
    rec.bessel = Some(r.bessel);
    rec.ratio_re = Some(r.ratio.re);
    rec.ratio_im = Some(r.ratio.im);
    rec.nodes = r.nodes;
    rec.seconds = c.seconds(t);
    Ok(rec)
}

fn d2_options(form: D2Form, c: &Common) -> Result<D2Options, CliError> {
    let base = D2Options { form, ..Default::default() };
    Ok(D2Options { tol: c.tol_or(base.tol)?, ..base })
}

/// D₂ values at each `(x₂₁, x₂₂)` in `points`, evaluated in parallel.
pub fn d2(lambda: [f64; 2], points: &[(f64, f64)], form: D2Form, c: &Common) -> Result<Vec<WaveRecord>, CliError> {
    let opts = d2_options(form, c)?;
    points
        .par_iter()
        .map(|&(a, b)| {
            let t = Instant::now();
            let w = psi_d2(lambda[0], lambda[1], a, b, &opts)?;
            let mut rec = WaveRecord::new(if form == D2Form::TwoD { "d2" } else { "d2-three" }, 2, w.lambda, w.x);
            rec.value_re = w.value.re;
            rec.value_im = w.value.im;
            rec.error = w.error;
            rec.nodes = w.nodes;
            rec.seconds = c.seconds(t);
            Ok(rec)
        })
        .collect()
}

pub const FACTORIZATION_TOL: f64 = 1e-6;

pub fn d2check(lambda: [f64; 2], grid: &[(f64, f64)], c: &Common) -> Result<FactorizationRecord, CliError> {
    let opts = d2_options(D2Form::TwoD, c)?;
    let t = Instant::now();
    let r = factorization_check(lambda[0], lambda[1], grid, &opts)?;
    let pair = |z: Complex64| (z.re, z.im);
    Ok(FactorizationRecord {
        record: "factorization".into(),
        lambda: lambda.to_vec(),
        constant: r.is_constant(FACTORIZATION_TOL),
        tolerance: FACTORIZATION_TOL,
        mean_re: r.mean.re,
        mean_im: r.mean.im,
        spread: r.spread,
        halved_spread: r.halved_spread,
        expected_re: r.expected.re,
        expected_im: r.expected.im,
        three_variable_constant: r.three_d_constant.map(pair),
        closed_form_candidate: r.candidate.map(pair),
        candidate_discrepancy: r.candidate_discrepancy().map(pair),
        seconds: c.seconds(t),
        points: r
            .points
            .iter()
            .map(|p| RatioRecord {
                xi: p.xi,
                eta: p.eta,
                psi_re: p.psi.re,
                psi_im: p.psi.im,
                error: p.error,
                ratio_re: p.ratio.re,
                ratio_im: p.ratio.im,
                halved_ratio_re: p.halved_ratio.re,
                halved_ratio_im: p.halved_ratio.im,
            })
            .collect(),
    })
}

pub fn eigen(
    op: EigenOperator,
    lambda: [f64; 2],
    x: [f64; 2],
    fd_step: Option<f64>,
    c: &Common,
) -> Result<EigenRecord, CliError> {
    let mut opts = EigenOptions::for_operator(op);
    opts.quad.tol = c.tol_or(opts.quad.tol)?;
    if let Some(h) = fd_step {
        if !(h > 0.0 && h < 0.5) {
            return Err(usage("--fd-step must lie in (0, 0.5)"));
        }
        opts.fd_step = h;
    }
    let t = Instant::now();
    let r = eigen_residual(op, lambda[0], lambda[1], (x[0], x[1]), &opts)?;
    Ok(EigenRecord {
        record: "eigen".into(),
        operator: format!("{op:?}").to_lowercase(),
        lambda: lambda.to_vec(),
        x: x.to_vec(),
        eigenvalue: r.eigenvalue,
        psi_re: r.psi.re,
        psi_im: r.psi.im,
        residual: r.residual,
        noise_floor: r.noise_floor,
        sample_error: r.sample_error,
        fd_step: opts.fd_step,
        seconds: c.seconds(t),
    })
}

pub fn dn(n: usize, lambda: &[f64], x: &[f64], step: Option<f64>, c: &Common) -> Result<WaveRecord, CliError> {
    let base = DnOptions::for_rank(n);
    let mut opts = DnOptions { tol: c.tol_or(base.tol)?, ..base };
    if let Some(h) = step {
        if !(h > 0.0) {
            return Err(usage("--step must be positive"));
        }
        opts.initial_step = h;
    }
    let t = Instant::now();
    let d = psi_dn(n, lambda, x, &opts)?;
    let mut rec = WaveRecord::new("dn", n, d.wave.lambda, d.wave.x);
    rec.value_re = d.wave.value.re;
    rec.value_im = d.wave.value.im;
    rec.error = d.wave.error;
    rec.nodes = d.wave.nodes;
    rec.variables = Some(d.names);
    rec.contour_offsets = Some(d.offsets);
    rec.seconds = c.seconds(t);
    Ok(rec)
}
