mod common;

use common::*;
use qtoda_core::kernels::{Block, Family, H2Spec};
use qtoda_core::laurent::{GaussianRational, LaurentPoly, Var};
use qtoda_core::lax::{
    build_L, build_R, build_Rstar, char_hamiltonians, quadratic_hamiltonian, verify_MN_with, verify_factorization,
    verify_factorization_with, FactorizationCase, LaxSpec, MatrixKind, Mutation,
};

#[test]
fn rank_four_factors_match_tabulated_entries() {
    let k = unit_kernel();
    assert_eq!(mismatches(&build_R(&k).m, &tabulated_r()), vec![]);
    assert_eq!(mismatches(&build_Rstar(&k).m, &tabulated_rstar()), vec![]);
}

#[test]
fn rank_four_lax_matrix_is_product_of_tabulated_factors() {
    let product = tabulated_r().checked_mul(&tabulated_rstar()).unwrap();
    assert_eq!(mismatches(&built_l_bound(), &product), vec![]);
}

#[test]
fn tabulated_lax_matrix_differs_only_at_two_entries() {
    let product = tabulated_r().checked_mul(&tabulated_rstar()).unwrap();
    let bad = mismatches(&tabulated_l(), &product);
    assert_eq!(bad, vec![(4, 5), (5, 6)]);
    assert_eq!(*product.get(3, 4), &(&a(1) * &d(0)) * &c(4, 1));
    assert_eq!(*product.get(4, 5), &a(2) * &d(1));
}

#[test]
fn rank_four_sample_entries() {
    let l = built_l_bound();
    assert_eq!(*l.get(0, 0), &a(4) - &d(4));
    assert_eq!(*l.get(0, 6), &c(-1, 2) * &u(1));
    assert_eq!(*l.get(6, 0), &(&(&d(3) * &d(4)) * &u(-1)) * &c(2, 1));
    let k = unit_kernel();
    let (r, rs) = (build_R(&k).m, build_Rstar(&k).m);
    assert_eq!(*r.get(0, 3), &c(-1, 2) * &u(1));
    assert_eq!(*r.get(3, 0), &e(&[(z(1), 1), (x(1), 1)]) * &c(2, 1));
    assert_eq!(*r.get(4, 1), e(&[(z(2), 1), (x(1), -1)]));
    assert_eq!(*rs.get(0, 3), c(1, 2));
    assert_eq!(*rs.get(4, 0), u(-1));
    assert_eq!(*rs.get(7, 4), &(&e(&[(z(1), 1), (x(1), 1)]) * &u(-1)) * &c(2, 1));
}

#[test]
fn factorization_holds_for_small_ranks() {
    for n in 2..=4 {
        let r = verify_factorization(n);
        assert!(r.passed, "n={n}: {:?}", r.residuals);
    }
}

#[test]
fn factorization_holds_with_symbolic_couplings() {
    let r = verify_factorization_with(&FactorizationCase::symbolic(3));
    assert!(r.passed, "{:?}", r.residuals);
}

#[test]
fn perturbed_coupling_breaks_factorization() {
    let case = FactorizationCase::reference(3).perturb_lax(2, LaurentPoly::int(2));
    assert!(!verify_factorization_with(&case).passed);
}

#[test]
fn corner_sign_mutations_are_detected() {
    let case = FactorizationCase::reference(3).mutate(Mutation::CornerSign(MatrixKind::R));
    assert!(!verify_factorization_with(&case).passed);
    assert!(!verify_MN_with(3, Some(Mutation::CornerSign(MatrixKind::N))).passed);
    assert!(!verify_MN_with(3, Some(Mutation::CornerSign(MatrixKind::M))).passed);
    assert!(verify_MN_with(3, None).passed);
}

#[test]
fn characteristic_polynomial_is_even_in_lambda() {
    for n in 2..=3 {
        let spec = LaxSpec::new(Family::TwistedA, n, qtoda_core::kernels::symbolic_couplings(n + 1), Block::X);
        let ch = char_hamiltonians(&build_L(&spec).unwrap());
        assert!(ch.lambda_even(), "n={n}");
        assert!(!ch.spectral.is_empty());
    }
}

fn kinetic(n: usize) -> LaurentPoly {
    let mut k = LaurentPoly::zero();
    for i in 1..=n {
        k = &k + &LaurentPoly::var_pow(Var::Px(i as u8), 2);
    }
    k.scale(&GaussianRational::ratio(1, 2))
}

#[test]
fn quadratic_coefficient_is_kinetic_minus_potential() {
    for (family, n) in [(Family::TwistedA, 2), (Family::TwistedA, 3), (Family::D, 3), (Family::C, 3)] {
        let g = qtoda_core::kernels::symbolic_couplings(family.coupling_count(n));
        let spec = LaxSpec::new(family, n, g.clone(), Block::X);
        let h = quadratic_hamiltonian(&build_L(&spec).unwrap());
        let v = H2Spec::new(family, n, g, Block::X).potential();
        assert_eq!(h, &kinetic(n) - &v, "{} n={n}", family.name());
    }
}

#[test]
fn rank_two_d_potential() {
    let v = H2Spec::unit(Family::D, 2, Block::X).potential();
    let expected = &e(&[(x(2), 1), (x(1), -1)]) + &e(&[(x(2), -1), (x(1), -1)]);
    assert_eq!(v, expected);
}
