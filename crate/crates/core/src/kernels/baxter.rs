use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{verify_h2_intertwining, Block, GenFunc, H2Spec, TwistedKernel};
use crate::laurent::{LaurentPoly, Var};
use crate::report::IdentityReport;

/// One factor `Q(outer; z)` of a composed kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelFactor {
    pub outer: Block,
    pub inner: Block,
    pub exponent: GenFunc,
}

/// The kernel `∫ Q(x; z) Q(y; z) dz` described symbolically, without evaluating the integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaxterDescriptor {
    pub rank: usize,
    pub factors: [KernelFactor; 2],
    /// `(g'_{n+2−i}, g_i)` pairs relating the inner chain's couplings to the outer ones.
    pub coupling_map: Vec<(String, String)>,
    pub reports: [IdentityReport; 2],
    pub derivation: String,
}

impl BaxterDescriptor {
    /// Both one-sided intertwining checks passed.
    pub fn commutes(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    /// Order-independent text of the two factors.
    pub fn canonical_text(&self) -> String {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| format!("Q({};{}) = exp({})", f.outer.name(), f.inner.name(), f.exponent.canonical_text()))
            .collect();
        parts.sort();
        parts.join(" | ")
    }

    /// Swaps the two outer blocks in every factor.
    pub fn swap_outer(&self) -> BaxterDescriptor {
        let (a, b) = (self.factors[0].outer, self.factors[1].outer);
        let swap = |v: Var| match (Block::of(v), v) {
            (Some(blk), _) if blk == a => b.pos(a.index_of(v).unwrap_or(0)),
            (Some(blk), _) if blk == b => a.pos(b.index_of(v).unwrap_or(0)),
            _ => v,
        };
        let mut out = self.clone();
        for f in out.factors.iter_mut() {
            f.exponent = f.exponent.rename(swap);
            f.outer = if f.outer == a { b } else { a };
        }
        out
    }
}

/// Composes two A(2)_{2n−1} kernels sharing the inner block `z`.
pub fn compose_baxter(g: &[LaurentPoly], first: Block, second: Block) -> BaxterDescriptor {
    let n = g.len() - 1;
    let base = TwistedKernel::twisted_a(g).genfunc();
    let factor = |outer: Block| KernelFactor {
        outer,
        inner: Block::Z,
        exponent: base.rename(|v| match v {
            Var::X(i) => outer.pos(i as usize),
            other => other,
        }),
    };
    let factors = [factor(first), factor(second)];
    let reports = [0, 1].map(|k| {
        let f = &factors[k];
        verify_h2_intertwining(&f.exponent, &H2Spec::new(super::Family::TwistedA, n, g.to_vec(), f.outer), &H2Spec::twisted_a_dual(g.to_vec(), Block::Z))
    });
    let coupling_map = (1..=n + 1).map(|i| (format!("g'{}", n + 2 - i), g[i - 1].to_string())).collect();
    let derivation = format!(
        "H({0}) Q({0};z) = Q({0};z) H~(z) and H({1}) Q({1};z) = Q({1};z) H~(z); integrating by parts in z gives H({0}) K = H({1}) K for K = int Q({0};z) Q({1};z) dz",
        first.name(),
        second.name()
    );
    BaxterDescriptor { rank: n, factors, coupling_map, reports, derivation }
}
