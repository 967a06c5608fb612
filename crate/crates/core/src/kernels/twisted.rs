use alloc::vec::Vec;

use super::{Block, GenFunc};
use crate::laurent::{Bindings, LaurentPoly, Monomial, Var};

/// Kernel exponent of the shape
///
/// `C e^{x_1+z_1} + Σ_{i≤n} A_i e^{x_i−z_i} + Σ_{i<n} B_i e^{z_{i+1}−x_i} + D e^{−x_n−z_n}`.
///
/// Every kernel of the A(2)_{2n−1}, C_n and D_n chains is an instance with particular
/// term coefficients. With `z_shift` set, `z_{i+1}` is renamed to `z_i`, which requires
/// `C = A_1 = 0` (the C_{n−1} side of a D_n kernel).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedKernel {
    pub rank: usize,
    /// `C`
    pub long: LaurentPoly,
    /// `A_1..A_n`
    pub diag: Vec<LaurentPoly>,
    /// `B_1..B_{n−1}`
    pub off: Vec<LaurentPoly>,
    /// `D`
    pub fork: LaurentPoly,
    pub z_shift: bool,
}

fn ones(k: usize) -> Vec<LaurentPoly> {
    (0..k).map(|_| LaurentPoly::one()).collect()
}

/// Coupling vector `(g_1, …, g_{n+1})` with `g_1 = 2` and all others `1`.
pub fn reference_couplings(n: usize) -> Vec<LaurentPoly> {
    (0..=n).map(|i| LaurentPoly::int(if i == 0 { 2 } else { 1 })).collect()
}

/// Symbolic couplings `(g_1, …, g_k)`.
pub fn symbolic_couplings(k: usize) -> Vec<LaurentPoly> {
    (1..=k).map(|i| LaurentPoly::var(Var::G(i as u8))).collect()
}

impl TwistedKernel {
    /// A(2)_{2n−1} kernel with couplings `g_1..g_{n+1}`.
    pub fn twisted_a(g: &[LaurentPoly]) -> Self {
        let n = g.len() - 1;
        assert!(n >= 2, "rank must be at least 2");
        TwistedKernel {
            rank: n,
            long: g[0].clone(),
            diag: ones(n),
            off: g[1..n].to_vec(),
            fork: g[n].clone(),
            z_shift: false,
        }
    }

    /// D_n (on x) to C_n (on z) kernel with unit coefficients: the `g_1 → 0` limit of
    /// [`TwistedKernel::twisted_a`] at unit couplings.
    pub fn d_to_c(n: usize) -> Self {
        assert!(n >= 2, "rank must be at least 2");
        TwistedKernel { rank: n, long: LaurentPoly::zero(), diag: ones(n), off: ones(n - 1), fork: LaurentPoly::one(), z_shift: false }
    }

    /// D_n to C_n kernel with symbolic couplings `g_i = G(i)`, `g'_i = Gp(i)`:
    /// `A_i = Π_{k=i}^{n−1} g'_k/g_k`, `A_n = 1`, `B_i = g_i Π_{k=i+1}^{n−1} g_k/g'_k`, `D = g_n`.
    pub fn gamma_beta(n: usize) -> Self {
        assert!(n >= 2, "rank must be at least 2");
        let g = |k: usize| Var::G(k as u8);
        let gp = |k: usize| Var::Gp(k as u8);
        let gamma = |i: usize| {
            LaurentPoly::monomial(Monomial::from_pairs((i..n).flat_map(|k| [(gp(k), 1), (g(k), -1)])))
        };
        let beta = |i: usize| {
            LaurentPoly::monomial(Monomial::from_pairs(
                core::iter::once((g(i), 1)).chain((i + 1..n).flat_map(|k| [(g(k), 1), (gp(k), -1)])),
            ))
        };
        let mut diag: Vec<LaurentPoly> = (1..n).map(gamma).collect();
        diag.push(LaurentPoly::one());
        TwistedKernel {
            rank: n,
            long: LaurentPoly::zero(),
            diag,
            off: (1..n).map(beta).collect(),
            fork: LaurentPoly::var(g(n)),
            z_shift: false,
        }
    }

    /// D_n (on x) to C_{n−1} (on z_1..z_{n−1}) kernel with couplings `g_1..g_n`:
    /// `Σ_{i<n} (e^{z_i−x_i} + g_i e^{x_{i+1}−z_i}) + g_n e^{−x_n−z_{n−1}}`.
    pub fn d_to_c_minus(g: &[LaurentPoly]) -> Self {
        let n = g.len();
        assert!(n >= 2, "rank must be at least 2");
        let mut diag = alloc::vec![LaurentPoly::zero()];
        diag.extend(g[..n - 1].iter().cloned());
        TwistedKernel { rank: n, long: LaurentPoly::zero(), diag, off: ones(n - 1), fork: g[n - 1].clone(), z_shift: true }
    }

    /// Variable standing for `e^{z_i}` in the ambient numbering.
    pub fn z_var(&self, i: usize) -> Var {
        if self.z_shift {
            assert!(i >= 2, "z_1 is absent from a shifted kernel");
            Var::Z((i - 1) as u8)
        } else {
            Var::Z(i as u8)
        }
    }

    /// Number of z coordinates actually present.
    pub fn z_rank(&self) -> usize {
        if self.z_shift {
            self.rank - 1
        } else {
            self.rank
        }
    }

    pub fn genfunc(&self) -> GenFunc {
        let n = self.rank;
        let x = |i: usize| Block::X.pos(i);
        let mut f = GenFunc::new();
        if !self.long.is_zero() {
            f.push(self.long.clone(), &[(x(1), 1), (self.z_var(1), 1)]);
        }
        for i in 1..=n {
            if !self.diag[i - 1].is_zero() {
                f.push(self.diag[i - 1].clone(), &[(x(i), 1), (self.z_var(i), -1)]);
            }
            if i < n {
                f.push(self.off[i - 1].clone(), &[(self.z_var(i + 1), 1), (x(i), -1)]);
            }
        }
        f.push(self.fork.clone(), &[(x(n), -1), (self.z_var(n), -1)]);
        f
    }

    /// Couplings of the x-side chain in pattern form `(long, inner[1..n−1], fork)`.
    pub fn x_side_pattern(&self) -> (LaurentPoly, Vec<LaurentPoly>, LaurentPoly) {
        let n = self.rank;
        let long = &self.diag[0] * &self.long;
        let inner = (1..n).map(|i| &self.diag[i] * &self.off[i - 1]).collect();
        let fork = &self.off[n - 2] * &self.fork;
        (long, inner, fork)
    }

    /// Couplings of the z-side chain in reflected pattern form `(long, inner[1..n−1], fork)`.
    pub fn z_side_pattern(&self) -> (LaurentPoly, Vec<LaurentPoly>, LaurentPoly) {
        let n = self.rank;
        let long = &self.diag[n - 1] * &self.fork;
        let inner = (1..n).map(|j| &self.diag[n - j - 1] * &self.off[n - j - 1]).collect();
        let fork = &self.off[0] * &self.long;
        (long, inner, fork)
    }

    pub fn substitute(&self, b: &Bindings) -> Result<TwistedKernel, crate::laurent::AlgebraError> {
        let s = |p: &LaurentPoly| p.substitute(b);
        Ok(TwistedKernel {
            rank: self.rank,
            long: s(&self.long)?,
            diag: self.diag.iter().map(s).collect::<Result<_, _>>()?,
            off: self.off.iter().map(s).collect::<Result<_, _>>()?,
            fork: s(&self.fork)?,
            z_shift: self.z_shift,
        })
    }
}

/// D_n to C_n kernel written out term by term with unit coefficients.
pub fn tabulated_d_to_c(n: usize) -> GenFunc {
    let (x, z) = (|i: usize| Var::X(i as u8), |i: usize| Var::Z(i as u8));
    let mut f = GenFunc::new();
    for i in 1..n {
        f.push(LaurentPoly::one(), &[(x(i), 1), (z(i), -1)]);
        f.push(LaurentPoly::one(), &[(z(i + 1), 1), (x(i), -1)]);
    }
    f.push(LaurentPoly::one(), &[(x(n), 1), (z(n), -1)]);
    f.push(LaurentPoly::one(), &[(x(n), -1), (z(n), -1)]);
    f
}

/// D_n to C_{n−1} kernel written out term by term.
pub fn tabulated_d_to_c_minus(g: &[LaurentPoly]) -> GenFunc {
    let n = g.len();
    let (x, z) = (|i: usize| Var::X(i as u8), |i: usize| Var::Z(i as u8));
    let mut f = GenFunc::new();
    for i in 1..n {
        f.push(LaurentPoly::one(), &[(z(i), 1), (x(i), -1)]);
        f.push(g[i - 1].clone(), &[(x(i + 1), 1), (z(i), -1)]);
    }
    f.push(g[n - 1].clone(), &[(x(n), -1), (z(n - 1), -1)]);
    f
}

/// A(2)_{2n−1} kernel written out term by term.
pub fn tabulated_twisted_a(g: &[LaurentPoly]) -> GenFunc {
    let n = g.len() - 1;
    let (x, z) = (|i: usize| Var::X(i as u8), |i: usize| Var::Z(i as u8));
    let mut f = GenFunc::new();
    f.push(g[0].clone(), &[(x(1), 1), (z(1), 1)]);
    for i in 1..n {
        f.push(LaurentPoly::one(), &[(x(i), 1), (z(i), -1)]);
        f.push(g[i].clone(), &[(z(i + 1), 1), (x(i), -1)]);
    }
    f.push(LaurentPoly::one(), &[(x(n), 1), (z(n), -1)]);
    f.push(g[n].clone(), &[(x(n), -1), (z(n), -1)]);
    f
}
