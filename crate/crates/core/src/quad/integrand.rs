use alloc::vec::Vec;

use num_complex::Complex64;

use super::admissible::{ExpTerm, IntegrandShape};
use super::QuadError;

/// `(b₁·exp(form₁) + b₂·exp(form₂))^exponent` on the principal branch.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerFactor {
    pub exponent: Complex64,
    pub base: Vec<ExpTerm>,
}

/// `exp(constant + Σ κ_k v_k + Σ c·exp(form)) · Π powers`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExpIntegrand {
    pub shape: IntegrandShape,
    pub constant: Complex64,
    pub powers: Vec<PowerFactor>,
}

fn linear(form: &[(usize, f64)], v: &[Complex64]) -> Complex64 {
    form.iter().map(|&(k, a)| v[k] * a).sum()
}

impl ExpIntegrand {
    pub fn new(nvars: usize) -> Self {
        ExpIntegrand {
            shape: IntegrandShape { nvars, terms: Vec::new(), linear: alloc::vec![Complex64::default(); nvars] },
            ..Default::default()
        }
    }

    pub fn nvars(&self) -> usize {
        self.shape.nvars
    }

    pub fn log_value(&self, v: &[Complex64]) -> Result<Complex64, QuadError> {
        let mut e = self.constant;
        for (k, kappa) in self.shape.linear.iter().enumerate() {
            e += kappa * v[k];
        }
        for t in &self.shape.terms {
            e += t.coeff * linear(&t.form, v).exp();
        }
        for p in &self.powers {
            let b: Complex64 = p.base.iter().map(|t| t.coeff * linear(&t.form, v).exp()).sum();
            if b.re <= 0.0 && b.im.abs() <= 1e-12 * b.norm() {
                return Err(QuadError::BranchCut { at: b });
            }
            e += p.exponent * b.ln();
        }
        Ok(e)
    }

    pub fn eval(&self, v: &[Complex64]) -> Result<Complex64, QuadError> {
        let e = self.log_value(v)?;
        if e.re < -745.0 {
            return Ok(Complex64::default());
        }
        Ok(e.exp())
    }
}
