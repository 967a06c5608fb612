use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{WaveError, WavePoint};
use crate::kernels::{GenFunc, RecursiveKernel};
use crate::laurent::{Monomial, Var};
use crate::quad::{
    choose_offsets, integrate_contour_1d, integrate_nested_with, ContourSpec, ExpIntegrand, ExpTerm, PowerFactor,
    QuadError, NESTED_TIGHTENING,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DnOptions {
    pub tol: f64,
    pub initial_step: f64,
    pub min_levels: u32,
    /// Tolerance factor applied per nesting level.
    pub tightening: f64,
    /// Node budget for each one-dimensional sweep.
    pub node_budget: usize,
}

impl DnOptions {
    pub fn for_rank(n: usize) -> Self {
        if n <= 2 {
            DnOptions { tol: 1e-10, initial_step: 0.5, min_levels: 1, tightening: NESTED_TIGHTENING, node_budget: 1 << 20 }
        } else {
            DnOptions { tol: 1e-2, initial_step: 2.0, min_levels: 1, tightening: 0.3, node_budget: 1 << 16 }
        }
    }
}

/// Integrand of the Dₙ recursion with its variable names, in nesting order.
#[derive(Clone, Debug, PartialEq)]
pub struct DnIntegrand {
    pub integrand: ExpIntegrand,
    pub names: Vec<String>,
}

enum Slot {
    Int(usize),
    Ext(f64),
}

struct Layout {
    n: usize,
    x: Vec<f64>,
}

impl Layout {
    /// Index of `x_{k,i}` (`k < n`) or `z_{k,i}` in the flattened variable list.
    fn index(&self, k: usize, i: usize, z: bool) -> usize {
        let before: usize = (1..k).map(|j| 2 * j).sum();
        before + if z { k } else { 0 } + (i - 1)
    }

    fn count(&self) -> usize {
        (1..self.n).map(|j| 2 * j).sum()
    }

    fn x(&self, k: usize, i: usize) -> Slot {
        if k == self.n {
            Slot::Ext(self.x[i - 1])
        } else {
            Slot::Int(self.index(k, i, false))
        }
    }

    /// Variable of the recursive kernel at level `k`, placed in the chain.
    fn slot(&self, k: usize, v: Var) -> Slot {
        match v {
            Var::X(i) => self.x(k + 1, i as usize),
            Var::W(i) => self.x(k, i as usize),
            Var::Z(i) => Slot::Int(self.index(k, i as usize, true)),
            other => panic!("unexpected variable {other} in recursive kernel"),
        }
    }

    fn names(&self) -> Vec<String> {
        let mut out = vec![String::new(); self.count()];
        for k in 1..self.n {
            for i in 1..=k {
                out[self.index(k, i, false)] = format!("x{k}{i}");
                out[self.index(k, i, true)] = format!("z{k}{i}");
            }
        }
        out
    }

    fn term(&self, k: usize, coeff: Complex64, m: &Monomial) -> ExpTerm {
        let mut c = coeff;
        let mut form = Vec::new();
        for (v, e) in m.iter() {
            match self.slot(k, v) {
                Slot::Int(j) => form.push((j, e as f64)),
                Slot::Ext(x) => c *= (e as f64 * x).exp(),
            }
        }
        ExpTerm::new(c, form)
    }

    fn push_genfunc(&self, k: usize, f: &GenFunc, out: &mut ExpIntegrand) {
        for t in &f.terms {
            let c = t.coeff.as_constant().expect("numeric kernel coefficient").to_complex64();
            out.shape.terms.push(self.term(k, c, &t.form));
        }
    }
}

/// Builds `e^{iλ₁x₁₁} Π_k Q_k(x_{k+1}, x_k; λ_{k+1})` from the symbolic recursive kernels.
pub fn dn_integrand(n: usize, lambda: &[f64], x: &[f64]) -> Result<DnIntegrand, WaveError> {
    if n < 2 || lambda.len() != n || x.len() != n {
        return Err(WaveError::Domain("need n >= 2 with n spectral values and n positions"));
    }
    let layout = Layout { n, x: x.to_vec() };
    let mut f = ExpIntegrand::new(layout.count());
    f.shape.linear[layout.index(1, 1, false)] += Complex64::new(0.0, lambda[0]);
    for k in 1..n {
        let q = RecursiveKernel::new(k);
        let l = lambda[k];
        layout.push_genfunc(k, &q.upper, &mut f);
        layout.push_genfunc(k, &q.lower, &mut f);
        for &(v, c) in &q.phase {
            let kappa = Complex64::new(0.0, l * c as f64);
            match layout.slot(k, v) {
                Slot::Int(j) => f.shape.linear[j] += kappa,
                Slot::Ext(xv) => f.constant += kappa * xv,
            }
        }
        let one = Complex64::new(1.0, 0.0);
        f.powers.push(PowerFactor {
            exponent: Complex64::new(0.0, l * q.power as f64),
            base: q.power_base.iter().map(|m| layout.term(k, one, m)).collect(),
        });
    }
    Ok(DnIntegrand { integrand: f, names: layout.names() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DnPoint {
    pub wave: WavePoint,
    pub names: Vec<String>,
    /// Imaginary contour offsets chosen per variable, in units of π.
    pub offsets: Vec<f64>,
}

/// Variables sharing no exponential term and no power factor with one another, scanned from the
/// innermost variable outwards. With the remaining variables fixed, the integrand is a product of
/// one-dimensional integrals over these.
pub fn separable_variables(f: &ExpIntegrand) -> Vec<usize> {
    let n = f.nvars();
    let mut chosen: Vec<usize> = Vec::new();
    for k in (0..n).rev() {
        let in_power = f.powers.iter().any(|p| p.base.iter().any(|t| t.exponent_of(k) != 0.0));
        let clash = f
            .shape
            .terms
            .iter()
            .any(|t| t.exponent_of(k) != 0.0 && chosen.iter().any(|&j| t.exponent_of(j) != 0.0));
        if !in_power && !clash {
            chosen.push(k);
        }
    }
    chosen.reverse();
    chosen
}

const FLOOR_FRACTION: f64 = 1e-4;

/// Golden-section search for the maximum of a concave function on `[lo, hi]`.
fn argmax_concave(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (hi - r * (hi - lo), lo + r * (hi - lo));
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > 1e-3 {
        if fa < fb || fa.is_nan() {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        }
    }
    0.5 * (lo + hi)
}

/// Integrand over the non-separable variables, each value carrying the product of the
/// separable one-dimensional integrals.
struct Factorized<'a> {
    outer_part: ExpIntegrand,
    outer: Vec<usize>,
    inner: Vec<(usize, Vec<ExpTerm>, Complex64, ContourSpec)>,
    full: &'a ExpIntegrand,
}

impl<'a> Factorized<'a> {
    fn new(f: &'a ExpIntegrand, inner_vars: &[usize], contours: &[ContourSpec], inner_tol: f64) -> Self {
        let mut outer_part = f.clone();
        outer_part.shape.terms.retain(|t| inner_vars.iter().all(|&j| t.exponent_of(j) == 0.0));
        let mut inner = Vec::new();
        for &j in inner_vars {
            outer_part.shape.linear[j] = Complex64::default();
            let terms = f.shape.terms.iter().filter(|t| t.exponent_of(j) != 0.0).cloned().collect();
            inner.push((j, terms, f.shape.linear[j], contours[j].with_tol(inner_tol)));
        }
        let outer = (0..f.nvars()).filter(|k| !inner_vars.contains(k)).collect();
        Factorized { outer_part, outer, inner, full: f }
    }

    /// `peak` is the largest value returned so far; each factor only needs to be resolved to an
    /// absolute accuracy that is negligible on that scale.
    fn eval(&self, point: &[Complex64], nodes: &mut usize, peak: &mut f64) -> Result<(Complex64, f64), QuadError> {
        let mut v = vec![Complex64::default(); self.full.nvars()];
        for (&k, p) in self.outer.iter().zip(point) {
            v[k] = *p;
        }
        let mut value = self.outer_part.eval(&v)?;
        let mut rel_err = 0.0;
        for (j, terms, kappa, spec) in &self.inner {
            if value == Complex64::default() {
                return Ok((value, 0.0));
            }
            let folded: Vec<(Complex64, f64)> = terms
                .iter()
                .map(|t| {
                    let mut c = t.coeff;
                    let mut a = 0.0;
                    for &(k, e) in &t.form {
                        if k == *j {
                            a = e;
                        } else {
                            c *= (v[k] * e).exp();
                        }
                    }
                    (c, a)
                })
                .collect();
            let floor = FLOOR_FRACTION * spec.tol * *peak / value.norm();
            let log_modulus = |s: f64| {
                let (z, _) = spec.point(s);
                (kappa * z + folded.iter().map(|(c, a)| c * (z * *a).exp()).sum::<Complex64>()).re
            };
            let center = argmax_concave(log_modulus, -spec.half_width, spec.half_width);
            let spec = ContourSpec { abs_tol: spec.abs_tol.max(floor), center: spec.center + center, ..*spec };
            let r = integrate_contour_1d(
                |z| {
                    let e: Complex64 = kappa * z + folded.iter().map(|(c, a)| c * (z * *a).exp()).sum::<Complex64>();
                    Ok(if e.re < -745.0 { Complex64::default() } else { e.exp() })
                },
                &spec,
            )?;
            *nodes += r.nodes_used;
            if r.value != Complex64::default() {
                rel_err += r.abs_error / r.value.norm();
            }
            value *= r.value;
        }
        *peak = peak.max(value.norm());
        Ok((value, value.norm() * rel_err))
    }
}

/// Dₙ wave function by nested quadrature over the whole recursion, for `n ∈ {2, 3}`.
///
/// The variables returned by [`separable_variables`] are integrated as a product of
/// one-dimensional integrals inside the nested integral over the others.
pub fn psi_dn(n: usize, lambda: &[f64], x: &[f64], opts: &DnOptions) -> Result<DnPoint, WaveError> {
    if !(2..=3).contains(&n) {
        return Err(WaveError::Domain("psi_dn supports n = 2 and n = 3"));
    }
    if x.iter().any(|v| v.abs() > 2.0) {
        return Err(WaveError::Domain("positions are validated for |x| <= 2"));
    }
    let DnIntegrand { integrand, names } = dn_integrand(n, lambda, x)?;
    let base = ContourSpec::default()
        .with_tol(opts.tol)
        .with_step(opts.initial_step)
        .with_levels(opts.min_levels, 12)
        .with_budget(opts.node_budget);
    let contours = choose_offsets(&integrand.shape, &vec![base; integrand.nvars()], &[0.0, 1.0])?;
    let inner = separable_variables(&integrand);
    let outer_count = integrand.nvars() - inner.len();
    let inner_tol = opts.tol * opts.tightening.powi(outer_count as i32);
    let fact = Factorized::new(&integrand, &inner, &contours, inner_tol);
    let outer_contours: Vec<ContourSpec> = fact.outer.iter().map(|&k| contours[k]).collect();
    let mut inner_nodes = 0usize;
    let mut peak = 0.0;
    let r = integrate_nested_with(|p| fact.eval(p, &mut inner_nodes, &mut peak), &outer_contours, opts.tightening)?;
    Ok(DnPoint {
        wave: WavePoint {
            n,
            lambda: lambda.to_vec(),
            x: x.to_vec(),
            value: r.value,
            error: r.abs_error,
            nodes: r.nodes_used + inner_nodes,
        },
        names,
        offsets: contours.iter().map(|c| c.offset_pi).collect(),
    })
}

