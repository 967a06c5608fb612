//! Outcome records of the exact identity checks.

use alloc::string::String;
use alloc::vec::Vec;

/// One nonzero residual of an identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    /// Where the residual lives, e.g. `"R*L(x)-L(z)*R (3,5)"` or `"hbar^0"`.
    pub location: String,
    /// Canonical text of the nonzero polynomial.
    pub value: String,
}

/// Result of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub rank: usize,
    /// `(name, value)` pairs describing the coupling assignment.
    pub couplings: Vec<(String, String)>,
    pub passed: bool,
    pub residuals: Vec<Residual>,
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, rank: usize) -> Self {
        IdentityReport {
            identity: identity.into(),
            rank,
            couplings: Vec::new(),
            passed: true,
            residuals: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn coupling(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.couplings.push((name.into(), value.into()));
        self
    }

    /// Records a residual; any residual marks the report as failed.
    pub fn push_residual(&mut self, location: impl Into<String>, value: impl Into<String>) {
        self.passed = false;
        self.residuals.push(Residual { location: location.into(), value: value.into() });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Marks failure without a polynomial residual (e.g. a failed sub-check).
    pub fn fail(&mut self, reason: impl Into<String>) {
        self.passed = false;
        self.notes.push(reason.into());
    }

    /// Merges another report's residuals, prefixing locations.
    pub fn absorb(&mut self, prefix: &str, other: &IdentityReport) {
        for r in &other.residuals {
            self.push_residual(alloc::format!("{prefix}: {}", r.location), r.value.clone());
        }
        if !other.passed && other.residuals.is_empty() {
            self.fail(alloc::format!("{prefix}: failed"));
        }
    }
}
