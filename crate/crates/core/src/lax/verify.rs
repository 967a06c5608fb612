use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{build_L, build_R, build_Rstar, BasisConvention, LaxMatrix, LaxSpec, MatrixKind, CORNER_ENTRY};
use crate::kernels::{
    momenta_from_genfunc, tabulated_d_to_c, tabulated_d_to_c_minus, symbolic_couplings, Block, Family, GenFunc, Side,
    TwistedKernel,
};
use crate::laurent::{Bindings, GaussianRational, LaurentPoly, PolyMatrix, Var};
use crate::report::IdentityReport;

/// Single deliberate defect injected into a check, to confirm that the check can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Flip the sign of the `−u/2` entry at [`CORNER_ENTRY`] of the given factor matrix.
    CornerSign(MatrixKind),
    /// Remove the k-th term (0-based) of the kernel used to bind the momenta.
    DropKernelTerm(usize),
    /// Double the coefficient of the k-th term (0-based) of the kernel used to bind the momenta.
    ScaleKernelTerm(usize),
}

impl Mutation {
    fn apply_to_genfunc(self, f: &GenFunc) -> GenFunc {
        let mut f = f.clone();
        match self {
            Mutation::DropKernelTerm(k) if k < f.terms.len() => {
                f.terms.remove(k);
            }
            Mutation::ScaleKernelTerm(k) if k < f.terms.len() => {
                f.terms[k].coeff = f.terms[k].coeff.scale(&GaussianRational::from_int(2));
            }
            _ => {}
        }
        f
    }

    fn apply_to_matrix(self, m: &mut LaxMatrix) {
        if let Mutation::CornerSign(kind) = self {
            if kind == m.kind {
                let (i, j) = CORNER_ENTRY(m.spec.rank);
                let flipped = -m.m.get(i - 1, j - 1).clone();
                m.m.set(i - 1, j - 1, flipped);
            }
        }
    }
}

fn apply(mutation: Option<Mutation>, f: &GenFunc) -> GenFunc {
    mutation.map(|m| m.apply_to_genfunc(f)).unwrap_or_else(|| f.clone())
}

fn residuals(report: &mut IdentityReport, label: &str, m: &PolyMatrix) {
    for (i, j, p) in m.nonzero_entries() {
        report.push_residual(format!("{label} ({},{})", i + 1, j + 1), p.to_string());
    }
}

fn sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.checked_sub(b).expect("equal dimensions")
}

fn mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.checked_mul(b).expect("equal dimensions")
}

fn bind(m: &PolyMatrix, b: &Bindings) -> PolyMatrix {
    m.substitute(b).expect("momenta appear with non-negative powers")
}

/// Couplings for a factorization check: the kernel's and, separately, the ones used to
/// build the Lax matrices (they agree unless deliberately perturbed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationCase {
    pub rank: usize,
    pub kernel_couplings: Vec<LaurentPoly>,
    pub lax_couplings: Vec<LaurentPoly>,
    pub mutation: Option<Mutation>,
}

impl FactorizationCase {
    /// `g_1 = 2`, all other couplings 1.
    pub fn reference(n: usize) -> Self {
        let g = crate::kernels::reference_couplings(n);
        FactorizationCase { rank: n, kernel_couplings: g.clone(), lax_couplings: g, mutation: None }
    }

    /// Couplings `g_i` as ring variables.
    pub fn symbolic(n: usize) -> Self {
        let g = symbolic_couplings(n + 1);
        FactorizationCase { rank: n, kernel_couplings: g.clone(), lax_couplings: g, mutation: None }
    }

    /// Replaces the 1-based coupling `g_i` in the Lax matrices only.
    pub fn perturb_lax(mut self, i: usize, value: LaurentPoly) -> Self {
        self.lax_couplings[i - 1] = value;
        self
    }

    pub fn mutate(mut self, m: Mutation) -> Self {
        self.mutation = Some(m);
        self
    }

    fn annotate(&self, mut report: IdentityReport) -> IdentityReport {
        for (k, g) in self.kernel_couplings.iter().enumerate() {
            report.couplings.push((format!("g{}", k + 1), g.to_string()));
        }
        if self.lax_couplings != self.kernel_couplings {
            for (k, g) in self.lax_couplings.iter().enumerate() {
                report.couplings.push((format!("L.g{}", k + 1), g.to_string()));
            }
        }
        if let Some(m) = self.mutation {
            report.note(format!("mutation: {m:?}"));
        }
        report
    }

    fn x_spec(&self) -> LaxSpec {
        LaxSpec::new(Family::TwistedA, self.rank, self.lax_couplings.clone(), Block::X)
    }

    fn z_spec(&self) -> LaxSpec {
        let rev: Vec<LaurentPoly> = self.lax_couplings.iter().rev().cloned().collect();
        LaxSpec::new(Family::TwistedA, self.rank, rev, Block::Z).with_convention(BasisConvention::Reflected)
    }
}

/// `L(x) = R·R*`, `L(z) = R*·R` and `R·L(x) = L(z)·R` at the reference couplings.
pub fn verify_factorization(n: usize) -> IdentityReport {
    verify_factorization_with(&FactorizationCase::reference(n))
}

pub fn verify_factorization_with(case: &FactorizationCase) -> IdentityReport {
    let n = case.rank;
    let report = IdentityReport::new("L(x)=R R*, L(z)=R* R, L(x) R=R L(z)", n);
    let mut report = case.annotate(report);
    let kernel = TwistedKernel::twisted_a(&case.kernel_couplings);
    let f = apply(case.mutation, &kernel.genfunc());
    let mut r = build_R(&kernel);
    let mut rs = build_Rstar(&kernel);
    if let Some(m) = case.mutation {
        m.apply_to_matrix(&mut r);
        m.apply_to_matrix(&mut rs);
    }
    let lx = bind(&build_L(&case.x_spec()).expect("valid spec").m, &momenta_from_genfunc(&f, Block::X, Side::Left, n));
    let lz = bind(&build_L(&case.z_spec()).expect("valid spec").m, &momenta_from_genfunc(&f, Block::Z, Side::Right, n));
    residuals(&mut report, "L(x)-R R*", &sub(&lx, &mul(&r.m, &rs.m)));
    residuals(&mut report, "L(z)-R* R", &sub(&lz, &mul(&rs.m, &r.m)));
    residuals(&mut report, "L(x) R-R L(z)", &sub(&mul(&lx, &r.m), &mul(&r.m, &lz)));
    report
}

/// Coefficients of `det(L − λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharHamiltonians {
    /// `u`-independent part, keyed by the power of `λ`.
    pub lambda_coeffs: BTreeMap<i32, LaurentPoly>,
    /// `u`-dependent part, keyed by the (nonzero) power of `u`; values still contain `λ`.
    pub spectral: BTreeMap<i32, LaurentPoly>,
}

impl CharHamiltonians {
    /// True if the `u`-independent part contains only even powers of `λ`.
    pub fn lambda_even(&self) -> bool {
        self.lambda_coeffs.keys().all(|k| k % 2 == 0)
    }
}

/// `det(L − λ)` of a Lax matrix.
pub fn char_polynomial(l: &PolyMatrix) -> LaurentPoly {
    l.shift_diagonal(&LaurentPoly::var(Var::Lambda)).determinant()
}

/// Coefficients of the characteristic polynomial, split into `u`-free and `u`-dependent parts.
pub fn char_hamiltonians(l: &LaxMatrix) -> CharHamiltonians {
    let det = char_polynomial(&l.m);
    let mut by_u = det.coefficients_in(Var::U);
    let free = by_u.remove(&0).unwrap_or_default();
    CharHamiltonians { lambda_coeffs: free.coefficients_in(Var::Lambda), spectral: by_u }
}

/// `−½` times the coefficient of `λ^{2n−2}`: equals `½Σp² − V` in this realization.
pub fn quadratic_hamiltonian(l: &LaxMatrix) -> LaurentPoly {
    let n = l.spec.rank as i32;
    char_hamiltonians(l)
        .lambda_coeffs
        .get(&(2 * n - 2))
        .cloned()
        .unwrap_or_default()
        .scale(&GaussianRational::ratio(-1, 2))
}

/// `det(L(x) − λ) = det(L(z) − λ)` with momenta bound by the A(2) kernel.
pub fn verify_det_identity(n: usize) -> IdentityReport {
    verify_det_with(&FactorizationCase::reference(n))
}

pub fn verify_det_with(case: &FactorizationCase) -> IdentityReport {
    let n = case.rank;
    let mut report = case.annotate(IdentityReport::new("det(L(x)-lam) = det(L(z)-lam)", n));
    let kernel = TwistedKernel::twisted_a(&case.kernel_couplings);
    let f = apply(case.mutation, &kernel.genfunc());
    let px = momenta_from_genfunc(&f, Block::X, Side::Left, n);
    let pz = momenta_from_genfunc(&f, Block::Z, Side::Right, n);
    let dx = char_polynomial(&build_L(&case.x_spec()).expect("valid spec").m).substitute(&px).expect("polynomial in momenta");
    let dz = char_polynomial(&build_L(&case.z_spec()).expect("valid spec").m).substitute(&pz).expect("polynomial in momenta");
    let diff = &dx - &dz;
    report.note(format!("det(L(x)-lam) has {} terms", dx.len()));
    for (k, p) in diff.coefficients_in(Var::Lambda) {
        report.push_residual(format!("lam^{k}"), p.to_string());
    }
    report
}

/// Both intertwining identities of the C_n / D_n factor matrices.
#[allow(non_snake_case)]
pub fn verify_MN_intertwining(n: usize) -> IdentityReport {
    verify_MN_with(n, None)
}

fn d_couplings(k: &TwistedKernel) -> Vec<LaurentPoly> {
    let (_, mut inner, fork) = k.x_side_pattern();
    inner.push(fork);
    inner
}

fn c_couplings(k: &TwistedKernel) -> Vec<LaurentPoly> {
    let n = k.rank;
    let (long, inner, _) = k.z_side_pattern();
    let mut c: Vec<LaurentPoly> = (1..n).map(|i| inner[n - i - 1].clone()).collect();
    c.push(long);
    c
}

#[allow(non_snake_case)]
pub fn verify_MN_with(n: usize, mutation: Option<Mutation>) -> IdentityReport {
    let mut report = IdentityReport::new("L_D(x) M = M L_C(z), L_D(x) N = N L_C'(z)", n);
    if let Some(m) = mutation {
        report.note(format!("mutation: {m:?}"));
    }
    // M: D_n in x against C_n in z.
    let k = TwistedKernel::d_to_c(n);
    let f = apply(mutation, &k.genfunc());
    let mut m = super::build_M(n);
    if let Some(mu) = mutation {
        mu.apply_to_matrix(&mut m);
    }
    let ld = bind(&build_L(&LaxSpec::new(Family::D, n, d_couplings(&k), Block::X)).expect("valid").m, &momenta_from_genfunc(&f, Block::X, Side::Left, n));
    let lc = bind(&build_L(&LaxSpec::new(Family::C, n, c_couplings(&k), Block::Z)).expect("valid").m, &momenta_from_genfunc(&f, Block::Z, Side::Right, n));
    residuals(&mut report, "L_D(x) M-M L_C(z)", &sub(&mul(&ld, &m.m), &mul(&m.m, &lc)));

    // N: D_n in x against C_{n−1} in z_1..z_{n−1}, embedded at rank n.
    let unit: Vec<LaurentPoly> = (0..n).map(|_| LaurentPoly::one()).collect();
    let k = TwistedKernel::d_to_c_minus(&unit);
    let f = apply(mutation, &k.genfunc());
    let mut nm = super::build_N(n);
    if let Some(mu) = mutation {
        mu.apply_to_matrix(&mut nm);
    }
    let ld = bind(&build_L(&LaxSpec::new(Family::D, n, d_couplings(&k), Block::X)).expect("valid").m, &momenta_from_genfunc(&f, Block::X, Side::Left, n));
    let lc = embedded_c_minus(&k);
    let lc = bind(&lc, &momenta_from_genfunc(&f, Block::Z, Side::Right, n - 1));
    residuals(&mut report, "L_D(x) N-N L_C'(z)", &sub(&mul(&ld, &nm.m), &mul(&nm.m, &lc)));
    report.note("C_{n-1} Lax matrix embedded at rank n: first z coordinate decoupled (coupling 0, momentum 0)");
    report
}

/// Rank-n C Lax matrix whose first coordinate is decoupled, relabelled to `z_1..z_{n−1}`.
fn embedded_c_minus(k: &TwistedKernel) -> PolyMatrix {
    let n = k.rank;
    let ambient = build_L(&LaxSpec::new(Family::C, n, c_couplings(k), Block::Z)).expect("valid").m;
    let mut freeze = Bindings::new();
    freeze.insert(Var::Pz(1), LaurentPoly::zero());
    freeze.insert(Var::Z(1), LaurentPoly::one());
    let frozen = ambient.substitute(&freeze).expect("monomial bindings");
    frozen.map(|p| {
        p.rename(|v| match v {
            Var::Z(i) => Var::Z(i - 1),
            Var::Pz(i) => Var::Pz(i - 1),
            other => other,
        })
    })
}

/// The D_n → C_n and D_n → C_{n−1} kernels as limits of more general kernels.
pub fn coupling_limit_kernels(n: usize) -> IdentityReport {
    let mut report = IdentityReport::new("coupling limits of kernels", n);
    let zero = |v: Var| {
        let mut b = Bindings::new();
        b.insert(v, LaurentPoly::zero());
        b
    };
    let units = |k: usize| -> Bindings { (1..=k).map(|i| (Var::G(i as u8), LaurentPoly::one())).chain((1..=k).map(|i| (Var::Gp(i as u8), LaurentPoly::one()))).collect() };

    // A(2) kernel at g_1 = 0.
    let fa = TwistedKernel::twisted_a(&symbolic_couplings(n + 1)).genfunc();
    let limit = fa.substitute_couplings(&zero(Var::G(1))).expect("monomial couplings");
    let target = tabulated_d_to_c(n);
    if !limit.same_forms(&target) {
        report.push_residual("A2 kernel at g1=0: exponents", limit.canonical_text());
    }
    let at_unit = limit.substitute_couplings(&units(n + 1)).expect("monomial couplings");
    if at_unit.canonical() != target.canonical() {
        report.push_residual("A2 kernel at g1=0, g_i=1", at_unit.canonical_text());
    }

    // gamma/beta kernel: coupling products, then g'_1 = 0.
    let gb = TwistedKernel::gamma_beta(n);
    for i in 1..n {
        let prod = &gb.diag[i - 1] * &gb.off[i - 1];
        if prod != LaurentPoly::var(Var::Gp(i as u8)) {
            report.push_residual(format!("gamma_{i} beta_{i} - g'_{i}"), (&prod - &LaurentPoly::var(Var::Gp(i as u8))).to_string());
        }
        let prod = &gb.diag[i] * &gb.off[i - 1];
        if prod != LaurentPoly::var(Var::G(i as u8)) {
            report.push_residual(format!("gamma_{} beta_{i} - g_{i}", i + 1), (&prod - &LaurentPoly::var(Var::G(i as u8))).to_string());
        }
    }
    let mut shifted = gb.substitute(&zero(Var::Gp(1))).expect("g'_1 appears with positive powers only");
    if !shifted.diag[0].is_zero() {
        report.push_residual("gamma_1 at g'1=0", shifted.diag[0].to_string());
    } else {
        shifted.z_shift = true;
        let limit = shifted.genfunc();
        let target = tabulated_d_to_c_minus(&symbolic_couplings(n));
        if !limit.same_forms(&target) {
            report.push_residual("gamma/beta kernel at g'1=0: exponents", limit.canonical_text());
        }
        let at_unit = limit.substitute_couplings(&units(n)).expect("monomial couplings");
        let target_unit = target.substitute_couplings(&units(n)).expect("monomial couplings");
        if at_unit.canonical() != target_unit.canonical() {
            report.push_residual("gamma/beta kernel at g'1=0, unit couplings", at_unit.canonical_text());
        }
    }
    report.note("exponent sets compared for symbolic couplings; coefficients compared at unit couplings");
    report
}
