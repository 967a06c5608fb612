use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Change of variable from the quadrature parameter `t` to the contour parameter `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeMap {
    /// `s = t`. Suited to integrands decaying doubly exponentially in `s`.
    Trapezoid,
    /// `s = sinh t`. Turns single-exponential decay in `s` into double-exponential decay in `t`.
    SinhDe,
}

/// Contour `v(s) = center + s + i(π·offset_pi + tilt_right·softplus(s) + tilt_left·softplus(−s))`
/// for real `s`, with the quadrature controls for integrating along it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourSpec {
    /// Imaginary offset in units of `π`.
    pub offset_pi: f64,
    /// Real shift of the contour origin.
    pub center: f64,
    /// Asymptotic slope of the imaginary part as `s → +∞`.
    pub tilt_right: f64,
    /// Asymptotic slope of the imaginary part as `s → −∞`.
    pub tilt_left: f64,
    /// Nodes with `|s| > half_width` are never evaluated.
    pub half_width: f64,
    /// Maximum number of integrand evaluations at this level.
    pub node_budget: usize,
    /// Relative tolerance on the difference of successive estimates.
    pub tol: f64,
    /// Absolute tolerance floor.
    pub abs_tol: f64,
    pub map: NodeMap,
    /// Step of the first (coarsest) estimate in `t`.
    pub initial_step: f64,
    /// Minimum number of step halvings.
    pub min_levels: u32,
    /// Maximum number of step halvings.
    pub max_levels: u32,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            offset_pi: 0.0,
            center: 0.0,
            tilt_right: 0.0,
            tilt_left: 0.0,
            half_width: 60.0,
            node_budget: 50_000_000,
            tol: 1e-10,
            abs_tol: 0.0,
            map: NodeMap::Trapezoid,
            initial_step: 0.5,
            min_levels: 1,
            max_levels: 12,
        }
    }
}

pub(crate) fn softplus(s: f64) -> f64 {
    if s > 35.0 {
        s
    } else {
        s.exp().ln_1p()
    }
}

fn sigmoid(s: f64) -> f64 {
    1.0 / (1.0 + (-s).exp())
}

impl ContourSpec {
    /// Horizontal line `Im v = π·offset_pi`.
    pub fn line(offset_pi: f64) -> Self {
        ContourSpec { offset_pi, ..Default::default() }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_center(mut self, c: f64) -> Self {
        self.center = c;
        self
    }

    pub fn with_tilt(mut self, left: f64, right: f64) -> Self {
        self.tilt_left = left;
        self.tilt_right = right;
        self
    }

    pub fn with_map(mut self, map: NodeMap) -> Self {
        self.map = map;
        self
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.initial_step = h;
        self
    }

    pub fn with_levels(mut self, min: u32, max: u32) -> Self {
        self.min_levels = min;
        self.max_levels = max;
        self
    }

    pub fn with_half_width(mut self, t: f64) -> Self {
        self.half_width = t;
        self
    }

    pub fn with_budget(mut self, n: usize) -> Self {
        self.node_budget = n;
        self
    }

    /// Point on the contour and `dv/ds` at parameter `s`.
    pub fn point(&self, s: f64) -> (Complex64, Complex64) {
        let im = PI * self.offset_pi + self.tilt_right * softplus(s) + self.tilt_left * softplus(-s);
        let dim = self.tilt_right * sigmoid(s) - self.tilt_left * sigmoid(-s);
        (Complex64::new(self.center + s, im), Complex64::new(1.0, dim))
    }

    /// `s(t)` and `ds/dt`.
    pub fn param(&self, t: f64) -> (f64, f64) {
        match self.map {
            NodeMap::Trapezoid => (t, 1.0),
            NodeMap::SinhDe => (t.sinh(), t.cosh()),
        }
    }

    pub fn is_tilted(&self) -> bool {
        self.tilt_left != 0.0 || self.tilt_right != 0.0
    }
}
