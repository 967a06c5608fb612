use alloc::vec::Vec;

use super::{
    tabulated_d_to_c, tabulated_d_to_c_minus, reference_couplings, symbolic_couplings, Block, Family, GenFunc, H2Spec,
    TwistedKernel,
};
use crate::laurent::{LaurentPoly, Var};

/// Every kernel with a quadratic intertwining relation, by descriptive id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelId {
    /// A(2)_{2n−1} kernel at `g_1 = 2`, other couplings 1.
    TwistedAReference,
    /// A(2)_{2n−1} kernel with symbolic couplings.
    TwistedASymbolic,
    /// D_n → C_n, unit coefficients.
    DToC,
    /// D_n → C_{n−1}, unit coefficients.
    DToCMinus,
    /// D_n → C_n with the two coupling sets `g`, `g'` symbolic.
    GammaBeta,
}

/// A kernel together with the Hamiltonians it intertwines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningCase {
    pub id: KernelId,
    pub rank: usize,
    pub kernel: GenFunc,
    pub left: H2Spec,
    pub right: H2Spec,
}

impl KernelId {
    pub const ALL: [KernelId; 5] =
        [KernelId::TwistedAReference, KernelId::TwistedASymbolic, KernelId::DToC, KernelId::DToCMinus, KernelId::GammaBeta];

    pub fn name(self) -> &'static str {
        match self {
            KernelId::TwistedAReference => "twisted-a-reference",
            KernelId::TwistedASymbolic => "twisted-a-symbolic",
            KernelId::DToC => "d-to-c",
            KernelId::DToCMinus => "d-to-c-minus",
            KernelId::GammaBeta => "gamma-beta",
        }
    }

    pub fn parse(s: &str) -> Option<KernelId> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Builds the kernel and its Hamiltonian pair at rank `n ≥ 2`.
    pub fn case(self, n: usize) -> IntertwiningCase {
        assert!(n >= 2, "rank must be at least 2");
        let ones = |k: usize| -> Vec<LaurentPoly> { (0..k).map(|_| LaurentPoly::one()).collect() };
        let (kernel, left, right) = match self {
            KernelId::TwistedAReference | KernelId::TwistedASymbolic => {
                let g = if self == KernelId::TwistedAReference { reference_couplings(n) } else { symbolic_couplings(n + 1) };
                (
                    TwistedKernel::twisted_a(&g).genfunc(),
                    H2Spec::new(Family::TwistedA, n, g.clone(), Block::X),
                    H2Spec::twisted_a_dual(g, Block::Z),
                )
            }
            KernelId::DToC => (tabulated_d_to_c(n), H2Spec::unit(Family::D, n, Block::X), H2Spec::unit(Family::C, n, Block::Z)),
            KernelId::DToCMinus => (
                tabulated_d_to_c_minus(&ones(n)),
                H2Spec::unit(Family::D, n, Block::X),
                H2Spec::unit(Family::C, n - 1, Block::Z),
            ),
            KernelId::GammaBeta => {
                let g = |i: usize| LaurentPoly::var(Var::G(i as u8));
                let gp = |i: usize| LaurentPoly::var(Var::Gp(i as u8));
                let mut d: Vec<LaurentPoly> = (1..n).map(g).collect();
                d.push(&g(n - 1) * &g(n));
                let mut c: Vec<LaurentPoly> = (1..n).map(gp).collect();
                c.push(g(n));
                (
                    TwistedKernel::gamma_beta(n).genfunc(),
                    H2Spec::new(Family::D, n, d, Block::X),
                    H2Spec::new(Family::C, n, c, Block::Z),
                )
            }
        };
        IntertwiningCase { id: self, rank: n, kernel, left, right }
    }
}

impl IntertwiningCase {
    pub fn verify(&self) -> crate::IdentityReport {
        let mut r = super::verify_h2_intertwining(&self.kernel, &self.left, &self.right);
        r.identity = alloc::format!("{}: {}", self.id.name(), r.identity);
        r
    }
}
