use alloc::vec::Vec;

use super::Block;
use crate::laurent::{GaussianRational, LaurentPoly, Monomial};

/// Which chain a quadratic Hamiltonian belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    TwistedA,
    C,
    D,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::TwistedA => "twistedA",
            Family::C => "C",
            Family::D => "D",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "twistedA" | "twisted-a" | "A2" => Some(Family::TwistedA),
            "C" | "c" => Some(Family::C),
            "D" | "d" => Some(Family::D),
            _ => None,
        }
    }

    /// Number of couplings a chain of rank `n` carries.
    pub fn coupling_count(self, n: usize) -> usize {
        match self {
            Family::TwistedA => n + 1,
            Family::C | Family::D => n,
        }
    }
}

/// Quadratic Hamiltonian `−½ Σ ∂²_{v_i} + V(v)` of a Toda chain on the coordinates of `block`.
///
/// Coupling conventions (`v` the block coordinates):
/// - `TwistedA`, `g_1..g_{n+1}`: `V = 2g_1 e^{2v_1} + Σ g_{i+1} e^{v_{i+1}−v_i} + g_n g_{n+1} e^{−v_n−v_{n−1}}`;
///   with `dual` set, the same chain in mirrored coordinates with reversed couplings:
///   `V = 2g_{n+1} e^{−2v_n} + Σ g_{i+1} e^{v_{i+1}−v_i} + g_1 g_2 e^{v_1+v_2}`.
/// - `C`, `c_1..c_n`: `V = Σ c_i e^{v_{i+1}−v_i} + 2c_n e^{−2v_n}`.
/// - `D`, `d_1..d_n`: `V = Σ d_i e^{v_{i+1}−v_i} + d_n e^{−v_{n−1}−v_n}`; rank 1 is the free particle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Spec {
    pub family: Family,
    pub rank: usize,
    pub couplings: Vec<LaurentPoly>,
    pub block: Block,
    pub dual: bool,
}

impl H2Spec {
    pub fn new(family: Family, rank: usize, couplings: Vec<LaurentPoly>, block: Block) -> Self {
        H2Spec { family, rank, couplings, block, dual: false }
    }

    pub fn unit(family: Family, rank: usize, block: Block) -> Self {
        let k = if family == Family::D && rank == 1 { 0 } else { family.coupling_count(rank) };
        Self::new(family, rank, (0..k).map(|_| LaurentPoly::one()).collect(), block)
    }

    pub fn twisted_a_dual(couplings: Vec<LaurentPoly>, block: Block) -> Self {
        let rank = couplings.len() - 1;
        H2Spec { family: Family::TwistedA, rank, couplings, block, dual: true }
    }

    fn e(&self, form: &[(usize, i32)]) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::from_pairs(form.iter().map(|&(i, k)| (self.block.pos(i), k))))
    }

    /// The potential `V` as a Laurent polynomial in the exponential variables.
    pub fn potential(&self) -> LaurentPoly {
        let n = self.rank;
        let g = &self.couplings;
        let two = GaussianRational::from_int(2);
        let mut v = LaurentPoly::zero();
        match (self.family, self.dual) {
            (Family::TwistedA, false) => {
                v += &(&g[0] * &self.e(&[(1, 2)])).scale(&two);
                for i in 1..n {
                    v += &(&g[i] * &self.e(&[(i + 1, 1), (i, -1)]));
                }
                v += &(&(&g[n - 1] * &g[n]) * &self.e(&[(n, -1), (n - 1, -1)]));
            }
            (Family::TwistedA, true) => {
                v += &(&g[n] * &self.e(&[(n, -2)])).scale(&two);
                for i in 1..n {
                    v += &(&g[i] * &self.e(&[(i + 1, 1), (i, -1)]));
                }
                v += &(&(&g[0] * &g[1]) * &self.e(&[(1, 1), (2, 1)]));
            }
            (Family::C, _) => {
                for i in 1..n {
                    v += &(&g[i - 1] * &self.e(&[(i + 1, 1), (i, -1)]));
                }
                v += &(&g[n - 1] * &self.e(&[(n, -2)])).scale(&two);
            }
            (Family::D, _) => {
                if n >= 2 {
                    for i in 1..n {
                        v += &(&g[i - 1] * &self.e(&[(i + 1, 1), (i, -1)]));
                    }
                    v += &(&g[n - 1] * &self.e(&[(n - 1, -1), (n, -1)]));
                }
            }
        }
        v
    }

    /// Exponential variables of the block.
    pub fn vars(&self) -> Vec<crate::laurent::Var> {
        (1..=self.rank).map(|i| self.block.pos(i)).collect()
    }
}
