//! Lax matrices of the A(2)_{2n−1}, C_n and D_n chains, the factor matrices that relate
//! them through integral kernels, and exact checks of the resulting identities.
//!
//! All matrices are `2n × 2n`. Row `i ≤ n` corresponds to the chain coordinate
//! `y_{n+1−i}` and row `2n+1−i` to its negative. For [`BasisConvention::Direct`] the chain
//! coordinates are the block coordinates, `y_j = v_j`; for [`BasisConvention::Reflected`]
//! they are `y_j = −v_{n+1−j}` with momenta `p_{y_j} = −p_{n+1−j}`.

mod factors;
mod verify;

pub use factors::{build_M, build_N, build_R, build_Rstar, MatrixKind, CORNER_ENTRY};
pub use verify::{
    char_hamiltonians, char_polynomial, coupling_limit_kernels, quadratic_hamiltonian, verify_MN_intertwining, verify_MN_with,
    verify_det_identity, verify_det_with, verify_factorization, verify_factorization_with, CharHamiltonians,
    FactorizationCase, Mutation,
};

use alloc::vec::Vec;

pub use crate::kernels::{Block, Family};
use crate::laurent::{GaussianRational, LaurentPoly, Monomial, PolyMatrix, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisConvention {
    Direct,
    Reflected,
}

impl BasisConvention {
    pub fn default_for(family: Family) -> Self {
        match family {
            Family::C => BasisConvention::Reflected,
            Family::TwistedA | Family::D => BasisConvention::Direct,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaxError {
    #[error("unsupported rank {0}; rank must be at least 2")]
    UnsupportedRank(usize),
    #[error("{family} chain does not support the {convention:?} basis convention")]
    UnsupportedConvention { family: &'static str, convention: BasisConvention },
    #[error("{family} chain of rank {rank} needs {expected} couplings, got {got}")]
    CouplingCount { family: &'static str, rank: usize, expected: usize, got: usize },
}

/// Family, rank and couplings of a Lax matrix, plus where its coordinates live.
///
/// Couplings follow [`crate::kernels::H2Spec`]: `g_1..g_{n+1}` for `TwistedA`,
/// `c_1..c_n` for `C`, `d_1..d_n` for `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxSpec {
    pub family: Family,
    pub rank: usize,
    pub couplings: Vec<LaurentPoly>,
    pub block: Block,
    pub convention: BasisConvention,
}

impl LaxSpec {
    pub fn new(family: Family, rank: usize, couplings: Vec<LaurentPoly>, block: Block) -> Self {
        LaxSpec { family, rank, couplings, block, convention: BasisConvention::default_for(family) }
    }

    pub fn unit(family: Family, rank: usize, block: Block) -> Self {
        Self::new(family, rank, (0..family.coupling_count(rank)).map(|_| LaurentPoly::one()).collect(), block)
    }

    pub fn with_convention(mut self, c: BasisConvention) -> Self {
        self.convention = c;
        self
    }

    fn validate(&self) -> Result<(), LaxError> {
        if self.rank < 2 {
            return Err(LaxError::UnsupportedRank(self.rank));
        }
        let fixed = match self.family {
            Family::C => Some(BasisConvention::Reflected),
            Family::D => Some(BasisConvention::Direct),
            Family::TwistedA => None,
        };
        if fixed.is_some_and(|c| c != self.convention) {
            return Err(LaxError::UnsupportedConvention { family: self.family.name(), convention: self.convention });
        }
        let expected = self.family.coupling_count(self.rank);
        if self.couplings.len() != expected {
            return Err(LaxError::CouplingCount {
                family: self.family.name(),
                rank: self.rank,
                expected,
                got: self.couplings.len(),
            });
        }
        Ok(())
    }

    /// `(long, inner[1..n−1], fork)` couplings of the common band pattern.
    fn pattern_couplings(&self) -> (LaurentPoly, Vec<LaurentPoly>, LaurentPoly) {
        let n = self.rank;
        let g = &self.couplings;
        match self.family {
            Family::TwistedA => (g[0].clone(), g[1..n].to_vec(), &g[n - 1] * &g[n]),
            Family::D => (LaurentPoly::zero(), g[..n - 1].to_vec(), g[n - 1].clone()),
            Family::C => (g[n - 1].clone(), (1..n).map(|j| g[n - j - 1].clone()).collect(), LaurentPoly::zero()),
        }
    }
}

/// A matrix over Laurent polynomials together with what it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxMatrix {
    pub spec: LaxSpec,
    pub kind: MatrixKind,
    pub m: PolyMatrix,
    pub basis_convention: BasisConvention,
}

/// Chain coordinates `e^{y_j}` and momenta `p_{y_j}` for a block and convention.
pub(crate) struct ChainCoords {
    n: usize,
    block: Block,
    convention: BasisConvention,
}

impl ChainCoords {
    pub(crate) fn new(n: usize, block: Block, convention: BasisConvention) -> Self {
        ChainCoords { n, block, convention }
    }

    /// `e^{k·y_j}` as a monomial.
    fn exp(&self, j: usize, k: i32) -> Monomial {
        match self.convention {
            BasisConvention::Direct => Monomial::pow_var(self.block.pos(j), k),
            BasisConvention::Reflected => Monomial::pow_var(self.block.pos(self.n + 1 - j), -k),
        }
    }

    fn mom(&self, j: usize) -> LaurentPoly {
        match self.convention {
            BasisConvention::Direct => LaurentPoly::var(self.block.mom(j)),
            BasisConvention::Reflected => -LaurentPoly::var(self.block.mom(self.n + 1 - j)),
        }
    }
}

/// The common band pattern of all Lax matrices (1-based positions):
///
/// - `(i,i) = p_{n+1−i}`, `(2n+1−i, 2n+1−i) = −p_{n+1−i}`
/// - `(i+1,i) = −1`
/// - `(i,i+1) = c_{n−i} e^{y_{n+1−i}−y_{n−i}}`, `(n+i,n+i+1) = c_i e^{y_{i+1}−y_i}` for `i < n`
/// - `(n,n+1) = 4 c_long e^{2y_1}`
/// - `(1,2n−1) = (2,2n) = −u/2`, `(2n−1,1) = (2n,2) = 2u^{−1} c_fork e^{−y_{n−1}−y_n}`
pub(crate) fn band_pattern(
    coords: &ChainCoords,
    long: &LaurentPoly,
    inner: &[LaurentPoly],
    fork: &LaurentPoly,
) -> PolyMatrix {
    let n = coords.n;
    let mut m = PolyMatrix::zero(2 * n);
    let mut put = |i: usize, j: usize, v: LaurentPoly| m.set(i - 1, j - 1, v);
    for i in 1..=n {
        let p = coords.mom(n + 1 - i);
        put(2 * n + 1 - i, 2 * n + 1 - i, -p.clone());
        put(i, i, p);
    }
    for i in 1..2 * n {
        put(i + 1, i, LaurentPoly::int(-1));
    }
    for i in 1..n {
        let e = coords.exp(n + 1 - i, 1).mul(&coords.exp(n - i, -1));
        put(i, i + 1, inner[n - i - 1].mul_monomial(&e));
        let e = coords.exp(i + 1, 1).mul(&coords.exp(i, -1));
        put(n + i, n + i + 1, inner[i - 1].mul_monomial(&e));
    }
    put(n, n + 1, long.mul_term(&coords.exp(1, 2), &GaussianRational::from_int(4)));
    let half_u = LaurentPoly::term(GaussianRational::ratio(-1, 2), Monomial::var(Var::U));
    put(1, 2 * n - 1, half_u.clone());
    put(2, 2 * n, half_u);
    let f = fork.mul_term(&coords.exp(n - 1, -1).mul(&coords.exp(n, -1)).mul(&Monomial::pow_var(Var::U, -1)), &GaussianRational::from_int(2));
    put(2 * n - 1, 1, f.clone());
    put(2 * n, 2, f);
    m
}

/// Lax matrix of a chain in momentum variables.
#[allow(non_snake_case)]
pub fn build_L(spec: &LaxSpec) -> Result<LaxMatrix, LaxError> {
    spec.validate()?;
    let coords = ChainCoords::new(spec.rank, spec.block, spec.convention);
    let (long, inner, fork) = spec.pattern_couplings();
    let m = band_pattern(&coords, &long, &inner, &fork);
    Ok(LaxMatrix { spec: spec.clone(), kind: MatrixKind::L, m, basis_convention: spec.convention })
}
