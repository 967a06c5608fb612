use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{tabulated_d_to_c, tabulated_d_to_c_minus, Block, Family, GenFunc, H2Spec};
use crate::laurent::{GaussianRational, LaurentPoly, Monomial, RationalExpr, Var};
use crate::report::IdentityReport;

/// Checks `(H_left − H_right) e^{F/ħ} = 0` order by order in `ħ`.
///
/// Conjugating `−½ħ²Σ∂² + V` by `e^{F/ħ}` gives `−½Σ(∂F)² − ½ħΣ∂²F + V`; the residual
/// `left − right` is a polynomial in `ħ` whose `ħ⁰` coefficient is the Hamilton–Jacobi
/// relation and whose `ħ¹` coefficient compares Laplacians. Both must vanish.
pub fn verify_h2_intertwining(f: &GenFunc, left: &H2Spec, right: &H2Spec) -> IdentityReport {
    let mut report = IdentityReport::new(
        format!("H2[{}{}]({}) Q = Q H2[{}{}]({})", left.family.name(), if left.dual { "~" } else { "" }, left.block.name(), right.family.name(), if right.dual { "~" } else { "" }, right.block.name()),
        left.rank,
    );
    for (k, g) in left.couplings.iter().enumerate() {
        report.couplings.push((format!("left.c{}", k + 1), g.to_string()));
    }
    for (k, g) in right.couplings.iter().enumerate() {
        report.couplings.push((format!("right.c{}", k + 1), g.to_string()));
    }
    if f.check_block_coupling(&[left.block], &[right.block]).is_err() {
        report.note("kernel terms do not each couple one left and one right coordinate");
    }
    let hbar = LaurentPoly::var(Var::Hbar);
    let half = GaussianRational::ratio(1, 2);
    let mut residual = &left.potential() - &right.potential();
    for (spec, sign) in [(left, -1i64), (right, 1)] {
        let s = half.clone() * GaussianRational::from_int(sign);
        for v in spec.vars() {
            let d = f.grad(v);
            let d2 = d.euler(v);
            residual += &(&d * &d).scale(&s);
            residual += &(&d2 * &hbar).scale(&s);
        }
    }
    let levels = residual.coefficients_in(Var::Hbar);
    for order in [0, 1] {
        match levels.get(&order) {
            Some(p) if !p.is_zero() => report.push_residual(format!("hbar^{order}"), p.to_string()),
            _ => report.note(format!("hbar^{order}: 0")),
        }
    }
    for (order, p) in levels.iter().filter(|(o, _)| **o != 0 && **o != 1) {
        report.push_residual(format!("hbar^{order}"), p.to_string());
    }
    report
}

/// Kernel of the rank-raising operator from D_k (coordinates `w`) to D_{k+1} (coordinates `x`):
///
/// `exp{ iν ℓ(x,w,z) + G(x;z) + F(w;z) } · (e^{−x_{k+1}} + e^{−w_k})^{2iν}`
///
/// with `ℓ = Σx + Σw − 2Σz`, `G` the D_{k+1}→C_k kernel and `F` the D_k→C_k kernel.
/// The spectral value `ν` is the ring variable [`Var::Nu`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursiveKernel {
    pub k: usize,
    /// `G(x; z)`, couples `x_1..x_{k+1}` to `z_1..z_k`.
    pub upper: GenFunc,
    /// `F(w; z)`, couples `w_1..w_k` to `z_1..z_k`.
    pub lower: GenFunc,
    /// Integer coefficients of the phase, multiplied by `iν`.
    pub phase: Vec<(Var, i32)>,
    /// The two exponentials whose sum is raised to the power `power · iν`.
    pub power_base: [Monomial; 2],
    pub power: i64,
}

impl RecursiveKernel {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "k must be at least 1");
        let upper = tabulated_d_to_c_minus(&(0..=k).map(|_| LaurentPoly::one()).collect::<Vec<_>>());
        let lower = tabulated_d_to_c(k).rename(|v| match v {
            Var::X(i) => Var::W(i),
            other => other,
        });
        let mut phase = Vec::new();
        phase.extend((1..=k + 1).map(|i| (Var::X(i as u8), 1)));
        phase.extend((1..=k).map(|i| (Var::W(i as u8), 1)));
        phase.extend((1..=k).map(|i| (Var::Z(i as u8), -2)));
        RecursiveKernel {
            k,
            upper,
            lower,
            phase,
            power_base: [Monomial::pow_var(Var::X((k + 1) as u8), -1), Monomial::pow_var(Var::W(k as u8), -1)],
            power: 2,
        }
    }

    fn power_sum(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.power_base[0].clone()) + LaurentPoly::monomial(self.power_base[1].clone())
    }

    fn i_nu() -> LaurentPoly {
        LaurentPoly::term(GaussianRational::i(), Monomial::var(Var::Nu))
    }

    /// `∂Φ/∂v` for the full exponent `Φ = log(kernel)`.
    pub fn grad(&self, v: Var) -> RationalExpr {
        let s = self.power_sum();
        let c = self.phase.iter().find(|p| p.0 == v).map(|p| p.1).unwrap_or(0);
        let poly = &(&self.upper.grad(v) + &self.lower.grad(v)) + &Self::i_nu().scale(&GaussianRational::from_int(c as i64));
        let log_part = RationalExpr::new(&s.euler(v) * &Self::i_nu().scale(&GaussianRational::from_int(self.power)), s)
            .expect("power base is nonzero");
        RationalExpr::from_poly(poly).add(&log_part)
    }

    /// `e^{−Φ} (−½∂_v²) e^{Φ} = −½((∂Φ)² + ∂²Φ)`.
    fn kinetic(&self, v: Var) -> RationalExpr {
        let d = self.grad(v);
        let total = d.mul(&d).add(&d.euler(v));
        total.mul_poly(&LaurentPoly::ratio(-1, 2))
    }
}

/// Verifies `H^{D_{k+1}}(x) Q = Q (H^{D_k}(w) + ½ν²)` at the level of the integrand, modulo
/// the explicit total derivative `Σ_j ∂_{z_j}(c_j · kernel)` with `c_j = −½(∂_{z_j}G − ∂_{z_j}F)`.
///
/// The residual is a rational function with denominator a power of `e^{−x_{k+1}} + e^{−w_k}`;
/// its numerator is split by powers of `ν` and every coefficient must vanish.
pub fn verify_recursive_intertwining(k: usize) -> IdentityReport {
    let q = RecursiveKernel::new(k);
    let mut report = IdentityReport::new(format!("H_D{}(x) Q = Q (H_D{}(w) + nu^2/2)", k + 1, k), k + 1);
    report.couplings.push(("nu".into(), "formal".into()));
    let hx = H2Spec::unit(Family::D, k + 1, Block::X);
    let hw = H2Spec::unit(Family::D, k, Block::W);
    let mut residual = RationalExpr::from_poly(&hx.potential() - &hw.potential());
    for v in hx.vars() {
        residual = residual.add(&q.kinetic(v));
    }
    for v in hw.vars() {
        residual = residual.sub(&q.kinetic(v));
    }
    let nu2 = LaurentPoly::var(Var::Nu).pow(2).scale(&GaussianRational::ratio(1, 2));
    residual = residual.sub(&RationalExpr::from_poly(nu2));
    let mut divergence = RationalExpr::zero();
    for j in 1..=k {
        let z = Var::Z(j as u8);
        let c = (&q.upper.grad(z) - &q.lower.grad(z)).scale(&GaussianRational::ratio(-1, 2));
        report.note(format!("c_{j} = {c}"));
        let term = RationalExpr::from_poly(c.euler(z)).add(&q.grad(z).mul_poly(&c));
        divergence = divergence.add(&term);
    }
    report.note(format!("integrand residual before counterterm is zero: {}", residual.is_zero()));
    let total = residual.sub(&divergence);
    let by_nu = total.num().coefficients_in(Var::Nu);
    for power in 0..=2 {
        match by_nu.get(&power) {
            Some(p) if !p.is_zero() => report.push_residual(format!("nu^{power}"), p.to_string()),
            _ => report.note(format!("nu^{power}: 0")),
        }
    }
    for (power, p) in by_nu.iter().filter(|(e, _)| !(0..=2).contains(*e)) {
        report.push_residual(format!("nu^{power}"), p.to_string());
    }
    report
}
