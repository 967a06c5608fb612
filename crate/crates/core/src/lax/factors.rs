use super::{BasisConvention, Family, LaxMatrix, LaxSpec};
use crate::kernels::{Block, TwistedKernel};
use crate::laurent::{GaussianRational, LaurentPoly, Monomial, PolyMatrix, Var};

/// What a [`LaxMatrix`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    L,
    R,
    Rstar,
    M,
    N,
}

/// 1-based position of the `−u/2` entry in the lower-left block of `R`, as a function of `n`.
pub const CORNER_ENTRY: fn(usize) -> (usize, usize) = |n| (n + 1, 2 * n);

fn mono(pairs: &[(Var, i32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

fn u_pow(k: i32) -> Monomial {
    Monomial::pow_var(Var::U, k)
}

fn factor_spec(kernel: &TwistedKernel) -> LaxSpec {
    let mut g = alloc::vec![kernel.long.clone()];
    g.extend(kernel.off.iter().cloned());
    g.push(kernel.fork.clone());
    LaxSpec::new(Family::TwistedA, kernel.rank, g, Block::X).with_convention(BasisConvention::Direct)
}

/// Left factor `R` with `L(x) = R·R*` for the x-side Lax matrix of `kernel`.
///
/// Entries (1-based): `(i, n+i) = u A_{n+1−i} e^{x_{n+1−i}−z_{n+1−i}}`, `(i, n+i−1) = −u` for
/// `i ≥ 2`, `(1, n) = (n+1, 2n) = −u/2`, `(n, 1) = 2C e^{x_1+z_1}`, `(n+i, i) = −1`,
/// `(n+i, i+1) = B_i e^{z_{i+1}−x_i}`, `(2n, n+1) = 2D e^{−x_n−z_n}`.
#[allow(non_snake_case)]
pub fn build_R(kernel: &TwistedKernel) -> LaxMatrix {
    let n = kernel.rank;
    let x = |i: usize| Var::X(i as u8);
    let mut m = PolyMatrix::zero(2 * n);
    let mut put = |i: usize, j: usize, v: LaurentPoly| m.set(i - 1, j - 1, v);
    for i in 1..=n {
        let k = n + 1 - i;
        let a = &kernel.diag[k - 1];
        if !a.is_zero() {
            put(i, n + i, a.mul_monomial(&mono(&[(x(k), 1), (kernel.z_var(k), -1), (Var::U, 1)])));
        }
        put(n + i, i, LaurentPoly::int(-1));
    }
    for i in 2..=n {
        put(i, n + i - 1, LaurentPoly::term(GaussianRational::from_int(-1), u_pow(1)));
    }
    let half_u = LaurentPoly::term(GaussianRational::ratio(-1, 2), u_pow(1));
    put(1, n, half_u.clone());
    let (ci, cj) = CORNER_ENTRY(n);
    put(ci, cj, half_u);
    if !kernel.long.is_zero() {
        put(n, 1, kernel.long.mul_term(&mono(&[(x(1), 1), (kernel.z_var(1), 1)]), &GaussianRational::from_int(2)));
    }
    for i in 1..n {
        put(n + i, i + 1, kernel.off[i - 1].mul_monomial(&mono(&[(kernel.z_var(i + 1), 1), (x(i), -1)])));
    }
    put(2 * n, n + 1, kernel.fork.mul_term(&mono(&[(x(n), -1), (kernel.z_var(n), -1)]), &GaussianRational::from_int(2)));
    LaxMatrix { spec: factor_spec(kernel), kind: MatrixKind::R, m, basis_convention: BasisConvention::Direct }
}

/// Right factor `R*` with `L(x) = R·R*` and `L(z) = R*·R`.
///
/// Entries (1-based): `(i, n+i) = A_i e^{x_i−z_i}`, `(i, n+i−1) = 1` for `i ≥ 2`,
/// `(1, n) = (n+1, 2n) = 1/2`, `(n, 1) = 2D u^{−1} e^{−x_n−z_n}`, `(n+i, i) = u^{−1}`,
/// `(n+i, i+1) = B_{n−i} u^{−1} e^{z_{n+1−i}−x_{n−i}}`, `(2n, n+1) = 2C u^{−1} e^{x_1+z_1}`.
#[allow(non_snake_case)]
pub fn build_Rstar(kernel: &TwistedKernel) -> LaxMatrix {
    let n = kernel.rank;
    let x = |i: usize| Var::X(i as u8);
    let mut m = PolyMatrix::zero(2 * n);
    let mut put = |i: usize, j: usize, v: LaurentPoly| m.set(i - 1, j - 1, v);
    for i in 1..=n {
        let a = &kernel.diag[i - 1];
        if !a.is_zero() {
            put(i, n + i, a.mul_monomial(&mono(&[(x(i), 1), (kernel.z_var(i), -1)])));
        }
        put(n + i, i, LaurentPoly::monomial(u_pow(-1)));
    }
    for i in 2..=n {
        put(i, n + i - 1, LaurentPoly::one());
    }
    put(1, n, LaurentPoly::ratio(1, 2));
    put(n + 1, 2 * n, LaurentPoly::ratio(1, 2));
    put(n, 1, kernel.fork.mul_term(&mono(&[(x(n), -1), (kernel.z_var(n), -1), (Var::U, -1)]), &GaussianRational::from_int(2)));
    for i in 1..n {
        let e = mono(&[(kernel.z_var(n + 1 - i), 1), (x(n - i), -1), (Var::U, -1)]);
        put(n + i, i + 1, kernel.off[n - i - 1].mul_monomial(&e));
    }
    if !kernel.long.is_zero() {
        put(2 * n, n + 1, kernel.long.mul_term(&mono(&[(x(1), 1), (kernel.z_var(1), 1), (Var::U, -1)]), &GaussianRational::from_int(2)));
    }
    LaxMatrix { spec: factor_spec(kernel), kind: MatrixKind::Rstar, m, basis_convention: BasisConvention::Direct }
}

/// Intertwining matrix between the D_n Lax matrix in `x` and the C_n Lax matrix in `z`:
/// the left factor of the unit D_n → C_n kernel.
#[allow(non_snake_case)]
pub fn build_M(n: usize) -> LaxMatrix {
    let mut r = build_R(&TwistedKernel::d_to_c(n));
    r.kind = MatrixKind::M;
    r
}

/// Intertwining matrix between the D_n Lax matrix in `x` and the C_{n−1} Lax matrix in
/// `z_1..z_{n−1}`: the left factor of the unit D_n → C_{n−1} kernel.
#[allow(non_snake_case)]
pub fn build_N(n: usize) -> LaxMatrix {
    let g: alloc::vec::Vec<LaurentPoly> = (0..n).map(|_| LaurentPoly::one()).collect();
    let mut r = build_R(&TwistedKernel::d_to_c_minus(&g));
    r.kind = MatrixKind::N;
    r
}
