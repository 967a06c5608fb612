use core::f64::consts::PI;

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::contour::ContourSpec;
use super::QuadError;

/// `coeff · exp(Σ a_k v_k)` inside the exponent of an integrand.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub coeff: Complex64,
    pub form: Vec<(usize, f64)>,
}

impl ExpTerm {
    pub fn new(coeff: Complex64, form: Vec<(usize, f64)>) -> Self {
        ExpTerm { coeff, form }
    }

    pub fn exponent_of(&self, var: usize) -> f64 {
        self.form.iter().find(|(k, _)| *k == var).map_or(0.0, |(_, a)| *a)
    }
}

/// Exponent structure `Σ c·exp(form) + Σ κ_k v_k` of an integrand, which is what decides
/// whether a set of contours gives a convergent integral.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct IntegrandShape {
    pub nvars: usize,
    pub terms: Vec<ExpTerm>,
    pub linear: Vec<Complex64>,
}

const SIGN_EPS: f64 = 1e-12;

fn rejected(variable: usize, reason: alloc::string::String) -> QuadError {
    QuadError::Inadmissible { variable, reason }
}

/// Term-by-term growth test of `shape` on `contours`.
///
/// Along each real direction of each variable, every exponential that grows must have a real
/// part tending to −∞, and at least one of the exponentials or the linear phase must decay.
pub fn check_admissible(shape: &IntegrandShape, contours: &[ContourSpec]) -> Result<(), QuadError> {
    if contours.len() != shape.nvars {
        return Err(rejected(0, format!("{} contours for {} variables", contours.len(), shape.nvars)));
    }
    let theta: Vec<f64> = contours.iter().map(|c| PI * c.offset_pi).collect();
    for (k, c) in contours.iter().enumerate() {
        if !c.is_tilted() {
            continue;
        }
        for t in &shape.terms {
            let a = t.exponent_of(k);
            if a == 0.0 {
                continue;
            }
            if t.form.iter().any(|&(j, b)| j != k && b != 0.0) {
                return Err(rejected(k, "bent contour shares a term with another variable".into()));
            }
            if (a > 0.0 && c.tilt_right != 0.0) || (a < 0.0 && c.tilt_left != 0.0) {
                return Err(rejected(k, "bent contour on a side where an exponential grows".into()));
            }
        }
    }
    for k in 0..shape.nvars {
        for sigma in [1.0f64, -1.0] {
            let mut decays = false;
            for t in &shape.terms {
                let a = t.exponent_of(k);
                if sigma * a <= 0.0 || t.coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let phase: f64 = t.form.iter().map(|&(j, b)| b * theta[j]).sum();
                let re = (t.coeff * Complex64::from_polar(1.0, phase)).re;
                if re > SIGN_EPS * t.coeff.norm() {
                    return Err(rejected(
                        k,
                        format!("exponential grows doubly exponentially as s -> {}inf", if sigma > 0.0 { "+" } else { "-" }),
                    ));
                }
                if re < -SIGN_EPS * t.coeff.norm() {
                    decays = true;
                }
            }
            if decays {
                continue;
            }
            let kappa = shape.linear.get(k).copied().unwrap_or_default();
            let tilt = if sigma > 0.0 { contours[k].tilt_right } else { contours[k].tilt_left };
            let rate = sigma * kappa.re - kappa.im * tilt;
            if rate >= 0.0 {
                return Err(rejected(
                    k,
                    format!("no decay as s -> {}inf", if sigma > 0.0 { "+" } else { "-" }),
                ));
            }
        }
    }
    Ok(())
}

/// First admissible assignment of offsets (multiples of π) from `candidates`, scanned in
/// lexicographic order with variable 0 slowest; other contour settings come from `base`.
pub fn choose_offsets(
    shape: &IntegrandShape,
    base: &[ContourSpec],
    candidates: &[f64],
) -> Result<Vec<ContourSpec>, QuadError> {
    let n = shape.nvars;
    if base.len() != n || candidates.is_empty() {
        return Err(rejected(0, "no candidate contours".into()));
    }
    let mut digits = alloc::vec![0usize; n];
    let mut last;
    loop {
        let trial: Vec<ContourSpec> = base
            .iter()
            .zip(&digits)
            .map(|(c, &d)| ContourSpec { offset_pi: candidates[d], ..*c })
            .collect();
        match check_admissible(shape, &trial) {
            Ok(()) => return Ok(trial),
            Err(e) => last = e,
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Err(last);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < candidates.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}
