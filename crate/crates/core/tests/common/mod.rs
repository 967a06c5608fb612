#![allow(dead_code)]

use qtoda_core::kernels::{momenta_from_genfunc, Block, Family, Side, TwistedKernel};
use qtoda_core::laurent::{LaurentPoly, Monomial, PolyMatrix, Var};
use qtoda_core::lax::{build_L, LaxSpec};

pub fn e(pairs: &[(Var, i32)]) -> LaurentPoly {
    LaurentPoly::monomial(Monomial::from_pairs(pairs.iter().copied()))
}

pub fn x(i: u8) -> Var {
    Var::X(i)
}

pub fn z(i: u8) -> Var {
    Var::Z(i)
}

pub fn c(n: i64, d: i64) -> LaurentPoly {
    LaurentPoly::ratio(n, d)
}

pub fn u(k: i32) -> LaurentPoly {
    LaurentPoly::var_pow(Var::U, k)
}

/// `a_i = e^{x_i−z_i}`.
pub fn a(i: u8) -> LaurentPoly {
    e(&[(x(i), 1), (z(i), -1)])
}

/// `d_0 = e^{x_1+z_1}`, `d_i = e^{z_{i+1}−x_i}`, `d_4 = e^{−x_4−z_4}`.
pub fn d(i: u8) -> LaurentPoly {
    match i {
        0 => e(&[(x(1), 1), (z(1), 1)]),
        4 => e(&[(x(4), -1), (z(4), -1)]),
        _ => e(&[(z(i + 1), 1), (x(i), -1)]),
    }
}

pub fn matrix(entries: Vec<((usize, usize), LaurentPoly)>) -> PolyMatrix {
    let mut m = PolyMatrix::zero(8);
    for ((i, j), v) in entries {
        m.set(i - 1, j - 1, v);
    }
    m
}

pub fn tabulated_l() -> PolyMatrix {
    let m1 = || c(-1, 1);
    matrix(vec![
        ((1, 1), &a(4) - &d(4)),
        ((1, 2), &a(4) * &d(3)),
        ((1, 7), &c(-1, 2) * &u(1)),
        ((2, 1), m1()),
        ((2, 2), &a(3) - &d(3)),
        ((2, 3), &a(3) * &d(2)),
        ((2, 8), &c(-1, 2) * &u(1)),
        ((3, 2), m1()),
        ((3, 3), &a(2) - &d(2)),
        ((3, 4), &a(2) * &d(1)),
        ((4, 3), m1()),
        ((4, 4), &(&a(1) + &d(0)) - &d(1)),
        ((4, 5), &(&a(1) * &d(0)) * &c(2, 1)),
        ((5, 4), m1()),
        ((5, 5), &(&d(1) - &a(1)) - &d(0)),
        ((5, 6), &(&a(2) * &d(1)) * &c(2, 1)),
        ((6, 5), m1()),
        ((6, 6), &d(2) - &a(2)),
        ((6, 7), &a(3) * &d(2)),
        ((7, 1), &(&(&d(3) * &d(4)) * &u(-1)) * &c(2, 1)),
        ((7, 6), m1()),
        ((7, 7), &d(3) - &a(3)),
        ((7, 8), &a(4) * &d(3)),
        ((8, 2), &(&(&d(3) * &d(4)) * &u(-1)) * &c(2, 1)),
        ((8, 7), m1()),
        ((8, 8), &d(4) - &a(4)),
    ])
}

pub fn tabulated_r() -> PolyMatrix {
    matrix(vec![
        ((1, 4), &c(-1, 2) * &u(1)),
        ((1, 5), &a(4) * &u(1)),
        ((2, 5), &c(-1, 1) * &u(1)),
        ((2, 6), &a(3) * &u(1)),
        ((3, 6), &c(-1, 1) * &u(1)),
        ((3, 7), &a(2) * &u(1)),
        ((4, 1), &d(0) * &c(2, 1)),
        ((4, 7), &c(-1, 1) * &u(1)),
        ((4, 8), &a(1) * &u(1)),
        ((5, 1), c(-1, 1)),
        ((5, 2), d(1)),
        ((5, 8), &c(-1, 2) * &u(1)),
        ((6, 2), c(-1, 1)),
        ((6, 3), d(2)),
        ((7, 3), c(-1, 1)),
        ((7, 4), d(3)),
        ((8, 4), c(-1, 1)),
        ((8, 5), &d(4) * &c(2, 1)),
    ])
}

pub fn tabulated_rstar() -> PolyMatrix {
    matrix(vec![
        ((1, 4), c(1, 2)),
        ((1, 5), a(1)),
        ((2, 5), c(1, 1)),
        ((2, 6), a(2)),
        ((3, 6), c(1, 1)),
        ((3, 7), a(3)),
        ((4, 1), &(&d(4) * &u(-1)) * &c(2, 1)),
        ((4, 7), c(1, 1)),
        ((4, 8), a(4)),
        ((5, 1), u(-1)),
        ((5, 2), &d(3) * &u(-1)),
        ((5, 8), c(1, 2)),
        ((6, 2), u(-1)),
        ((6, 3), &d(2) * &u(-1)),
        ((7, 3), u(-1)),
        ((7, 4), &d(1) * &u(-1)),
        ((8, 4), u(-1)),
        ((8, 5), &(&d(0) * &u(-1)) * &c(2, 1)),
    ])
}

pub fn unit_kernel() -> TwistedKernel {
    TwistedKernel::twisted_a(&vec![LaurentPoly::one(); 5])
}

pub fn built_l_bound() -> PolyMatrix {
    let k = unit_kernel();
    let spec = LaxSpec::new(Family::TwistedA, 4, vec![LaurentPoly::one(); 5], Block::X);
    let p = momenta_from_genfunc(&k.genfunc(), Block::X, Side::Left, 4);
    build_L(&spec).unwrap().m.substitute(&p).unwrap()
}

pub fn mismatches(a: &PolyMatrix, b: &PolyMatrix) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if a.get(i, j) != b.get(i, j) {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}
