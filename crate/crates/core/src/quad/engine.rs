use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::contour::ContourSpec;
use super::QuadError;

/// Successful quadrature outcome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error: f64,
    /// Total integrand evaluations, inner levels included.
    pub nodes_used: usize,
    /// Step halvings performed at the outermost level.
    pub levels: u32,
}

/// Tolerance factor applied per nesting level.
pub const NESTED_TIGHTENING: f64 = 0.1;

/// Absolute tolerance handed to an inner level, as a fraction of `tol × peak` of the level above.
const FLOOR_FRACTION: f64 = 1e-2;
/// Parameter extent that is always covered before truncation is allowed.
const MIN_EXTENT: f64 = 3.0;
/// Consecutive negligible terms that end a sweep.
const NEGLIGIBLE_RUN: usize = 4;

#[derive(Default)]
struct Sums {
    sum: Complex64,
    abs_sum: f64,
    err_sum: f64,
    max_term: f64,
    nodes: usize,
}

type Node<'a> = dyn FnMut(Complex64) -> Result<(Complex64, f64), QuadError> + 'a;

fn sweep(
    g: &mut Node<'_>,
    spec: &ContourSpec,
    start: f64,
    stride: f64,
    trunc: f64,
    level: usize,
    sums: &mut Sums,
) -> Result<(), QuadError> {
    let mut run = 0;
    let mut j = 0usize;
    let mut prev = f64::INFINITY;
    loop {
        let t = start + stride * j as f64;
        let (s, ds) = spec.param(t);
        if s.abs() > spec.half_width {
            return Ok(());
        }
        let (v, dv) = spec.point(s);
        let (f, e) = g(v)?;
        let w = dv * ds;
        let term = f * w;
        if !term.re.is_finite() || !term.im.is_finite() {
            return Err(QuadError::NonFinite { level, at: v });
        }
        let mag = term.norm();
        sums.sum += term;
        sums.abs_sum += mag;
        sums.err_sum += e * w.norm();
        if mag > sums.max_term {
            sums.max_term = mag;
        }
        sums.nodes += 1;
        if sums.nodes > spec.node_budget {
            return Err(QuadError::Budget { level, nodes: sums.nodes });
        }
        let falling = mag <= prev;
        prev = mag;
        if s.abs() >= MIN_EXTENT && falling && mag <= trunc * sums.max_term {
            run += 1;
            if run >= NEGLIGIBLE_RUN {
                return Ok(());
            }
        } else {
            run = 0;
        }
        j += 1;
    }
}

/// Trapezoid levels along one contour, halving the step until two successive estimates agree.
/// `g` returns the integrand value and an absolute error already carried by it.
fn refine(g: &mut Node<'_>, spec: &ContourSpec, level: usize) -> Result<QuadResult, QuadError> {
    let trunc = (spec.tol * 1e-6).clamp(1e-20, 1e-8);
    let mut sums = Sums::default();
    let mut h = spec.initial_step;
    sweep(g, spec, 0.0, h, trunc, level, &mut sums)?;
    sweep(g, spec, -h, -h, trunc, level, &mut sums)?;
    let mut prev = sums.sum * h;
    for k in 1..=spec.max_levels {
        h *= 0.5;
        sweep(g, spec, h, 2.0 * h, trunc, level, &mut sums)?;
        sweep(g, spec, -h, -2.0 * h, trunc, level, &mut sums)?;
        let cur = sums.sum * h;
        let diff = (cur - prev).norm();
        let floor = 16.0 * f64::EPSILON * h * sums.abs_sum;
        let est = diff.max(floor) + h * sums.err_sum;
        let target = (spec.tol * cur.norm()).max(spec.abs_tol);
        if k >= spec.min_levels && est <= target {
            return Ok(QuadResult { value: cur, abs_error: est, nodes_used: sums.nodes, levels: k });
        }
        if k == spec.max_levels {
            return Err(QuadError::NonConvergence {
                level,
                estimate: cur,
                previous: prev,
                nodes: sums.nodes,
            });
        }
        prev = cur;
    }
    Err(QuadError::NonConvergence { level, estimate: prev, previous: prev, nodes: sums.nodes })
}

/// Integrates `f` along the contour described by `c`.
pub fn integrate_contour_1d<F>(mut f: F, c: &ContourSpec) -> Result<QuadResult, QuadError>
where
    F: FnMut(Complex64) -> Result<Complex64, QuadError>,
{
    let mut g = |v: Complex64| f(v).map(|x| (x, 0.0));
    refine(&mut g, c, 0)
}

/// Like [`integrate_contour_1d`], with an integrand that reports its own absolute error.
pub fn integrate_contour_1d_err<F>(mut f: F, c: &ContourSpec) -> Result<QuadResult, QuadError>
where
    F: FnMut(Complex64) -> Result<(Complex64, f64), QuadError>,
{
    refine(&mut f, c, 0)
}

/// Iterated integral; `contours[0]` is the outermost variable and `f` receives the point in
/// the same order.
pub fn integrate_nested<F>(mut f: F, contours: &[ContourSpec]) -> Result<QuadResult, QuadError>
where
    F: FnMut(&[Complex64]) -> Result<Complex64, QuadError>,
{
    integrate_nested_err(|v: &[Complex64]| f(v).map(|x| (x, 0.0)), contours)
}

pub fn integrate_nested_err<F>(f: F, contours: &[ContourSpec]) -> Result<QuadResult, QuadError>
where
    F: FnMut(&[Complex64]) -> Result<(Complex64, f64), QuadError>,
{
    integrate_nested_with(f, contours, NESTED_TIGHTENING)
}

/// Nested integration with an explicit per-level tolerance factor.
pub fn integrate_nested_with<F>(mut f: F, contours: &[ContourSpec], tightening: f64) -> Result<QuadResult, QuadError>
where
    F: FnMut(&[Complex64]) -> Result<(Complex64, f64), QuadError>,
{
    if contours.is_empty() {
        let (v, e) = f(&[])?;
        return Ok(QuadResult { value: v, abs_error: e, nodes_used: 1, levels: 0 });
    }
    let mut point = vec![Complex64::new(0.0, 0.0); contours.len()];
    let mut peaks = vec![0.0; contours.len()];
    let mut evals = 0usize;
    let mut nest = Nest { contours, tightening, point: &mut point, peaks: &mut peaks, evals: &mut evals };
    let mut r = nest.level(&mut f, 0, 0.0)?;
    r.nodes_used = evals;
    Ok(r)
}

struct Nest<'a> {
    contours: &'a [ContourSpec],
    tightening: f64,
    point: &'a mut Vec<Complex64>,
    /// Largest integrand magnitude met so far at each level.
    peaks: &'a mut Vec<f64>,
    evals: &'a mut usize,
}

impl Nest<'_> {
    /// Integrates level `level`; `floor` is an absolute tolerance inherited from the level above.
    fn level<F>(&mut self, f: &mut F, level: usize, floor: f64) -> Result<QuadResult, QuadError>
    where
        F: FnMut(&[Complex64]) -> Result<(Complex64, f64), QuadError>,
    {
        let mut spec = self.contours[level];
        let mut factor = 1.0;
        for _ in 0..level {
            factor *= self.tightening;
        }
        spec.tol *= factor;
        spec.abs_tol = (spec.abs_tol * factor).max(floor);
        let last = level + 1 == self.contours.len();
        let inner_tol = spec.tol * self.tightening;
        let mut g = |v: Complex64| -> Result<(Complex64, f64), QuadError> {
            self.point[level] = v;
            let (val, err) = if last {
                *self.evals += 1;
                f(self.point)?
            } else {
                let r = self.level(f, level + 1, FLOOR_FRACTION * inner_tol * self.peaks[level])?;
                (r.value, r.abs_error)
            };
            if val.norm() > self.peaks[level] {
                self.peaks[level] = val.norm();
            }
            Ok((val, err))
        };
        refine(&mut g, &spec, level)
    }
}
