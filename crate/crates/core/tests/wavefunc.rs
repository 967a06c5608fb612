use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use qtoda_core::wavefunc::{
    chi_a1, dn_integrand, eigen_residual, eigen_residual_with, factorization_check, psi_d2, psi_dn, standard_grid,
    y_normalization, D2Options, DnOptions, EigenOperator, EigenOptions, WaveError,
};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn a1_at_zero_order_is_real() {
    for y in [-1.0, 0.0, 1.5] {
        let r = chi_a1(0.0, y).unwrap();
        assert!(r.value.im.abs() <= 1e-12 * r.value.re.abs(), "{}", r.value);
    }
}

#[test]
fn domains_are_enforced() {
    assert!(matches!(chi_a1(6.0, 0.0), Err(WaveError::Domain(_))));
    assert!(matches!(y_normalization(0.0), Err(WaveError::Domain(_))));
    assert!(matches!(psi_d2(0.3, 0.7, 2.5, 0.0, &D2Options::default()), Err(WaveError::Domain(_))));
    assert!(matches!(psi_dn(4, &[0.0; 4], &[0.0; 4], &DnOptions::for_rank(4)), Err(WaveError::Domain(_))));
}

#[test]
fn d2_is_finite_at_zero_spectral_values() {
    let w = psi_d2(0.0, 0.0, 0.3, -0.4, &D2Options::default()).unwrap();
    assert!(w.value.norm().is_finite() && w.value.norm() > 0.0);
}

/// Reflections of the spectral pair, rescaled by `e^{−2πλ₂}`, leave the wave function unchanged.
#[test]
fn d2_reflection_symmetry() {
    let (l1, l2) = (0.3, 0.7);
    let (x21, x22) = (0.25, -0.35);
    let opts = D2Options::default();
    let scaled = |a: f64, b: f64| {
        let w = psi_d2(a, b, x21, x22, &opts).unwrap();
        w.value * (-2.0 * PI * b).exp()
    };
    let base = scaled(l1, l2);
    for (a, b) in [(l2, l1), (-l1, -l2), (-l2, -l1)] {
        assert!(rel(scaled(a, b), base) < 1e-8, "({a}, {b})");
    }
}

#[test]
fn two_and_three_variable_forms_agree() {
    for (l1, l2) in [(0.3, 0.7), (-0.2, 0.45)] {
        for x21 in [-0.5, 0.4] {
            for x22 in [-0.3, 0.6] {
                let a = psi_d2(l1, l2, x21, x22, &D2Options::default()).unwrap();
                let b = psi_d2(l1, l2, x21, x22, &D2Options::three_d()).unwrap();
                assert!(rel(b.value, a.value) <= 1e-6, "{l1} {l2} {x21} {x22}: {} vs {}", a.value, b.value);
            }
        }
    }
}

#[test]
fn factorization_with_vanishing_first_value() {
    let r = factorization_check(0.0, 0.6, &standard_grid(), &D2Options::default()).unwrap();
    assert!(r.is_constant(1e-8), "spread {}", r.spread);
    assert!(rel(r.mean, r.expected) < 1e-8, "{} vs {}", r.mean, r.expected);
}

#[test]
fn factorization_rejects_halved_orders() {
    let r = factorization_check(0.3, 0.7, &standard_grid(), &D2Options::default()).unwrap();
    assert!(r.is_constant(1e-6));
    assert!(r.halved_spread > 1e-3, "halved spread {}", r.halved_spread);
}

#[test]
fn eigen_residuals_are_small() {
    let (l1, l2) = (0.3, 0.7);
    for (op, target) in [(EigenOperator::Quadratic, 1e-5), (EigenOperator::Quartic, 1e-4)] {
        let r = eigen_residual(op, l1, l2, (0.1, -0.2), &EigenOptions::for_operator(op)).unwrap();
        let res = r.residual.unwrap();
        assert!(res <= target, "{op:?}: {res:e} (floor {:e})", r.noise_floor);
        assert!(!r.is_noise_limited(target));
    }
}

#[test]
fn eigen_residual_detects_a_wrong_function() {
    // K-product with halved orders is not an eigenfunction.
    let (l1, l2) = (0.3, 0.7);
    let r = eigen_residual_with(
        |a, b| {
            let w = psi_d2(l1 / 2.0, l2 / 2.0, a, b, &D2Options::default())?;
            Ok((w.value, w.error))
        },
        EigenOperator::Quadratic,
        l1,
        l2,
        (0.1, -0.2),
        1e-3,
    )
    .unwrap();
    assert!(r.residual.unwrap() > 1e-2);
}

#[test]
fn zero_sampler_is_degenerate() {
    let r = eigen_residual_with(|_, _| Ok((Complex64::new(0.0, 0.0), 0.0)), EigenOperator::Quartic, 0.3, 0.7, (0.0, 0.0), 0.02)
        .unwrap();
    assert!(r.is_degenerate());
    assert!(eigen_residual_with(|_, _| Ok((Complex64::new(1.0, 0.0), 0.0)), EigenOperator::Quadratic, 0.3, 0.7, (0.0, 0.0), 0.0)
        .is_err());
}

#[test]
fn recursion_at_rank_two_matches_direct_form() {
    for (lam, x) in [([0.3, 0.7], [0.2, -0.1]), ([-0.4, 0.25], [-0.6, 0.5])] {
        let a = psi_d2(lam[0], lam[1], x[0], x[1], &D2Options::default()).unwrap();
        let d = psi_dn(2, &lam, &x, &DnOptions::for_rank(2)).unwrap();
        assert!(rel(d.wave.value, a.value) <= 1e-9, "{} vs {}", d.wave.value, a.value);
    }
}

#[test]
fn rank_three_smoke() {
    let d = psi_dn(3, &[0.2, 0.5, 0.9], &[0.1, -0.2, 0.3], &DnOptions::for_rank(3)).unwrap();
    assert_eq!(d.names.len(), 6);
    assert!(d.wave.value.norm().is_finite() && d.wave.value.norm() > 0.0);
    assert!(d.wave.error <= 1e-2 * d.wave.value.norm() * 10.0);
}

/// Log-modulus of the rank-three integrand on its contours, as a function of the real parameters.
struct Surface {
    f: qtoda_core::quad::ExpIntegrand,
    offsets: Vec<f64>,
}

impl Surface {
    fn point(&self, s: &DVector<f64>) -> Vec<Complex64> {
        s.iter().zip(&self.offsets).map(|(&r, &o)| Complex64::new(r, PI * o)).collect()
    }

    fn log_mod(&self, s: &DVector<f64>) -> f64 {
        self.f.log_value(&self.point(s)).unwrap().re
    }

    fn grad_hess(&self, s: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>) {
        let d = s.len();
        let h = 1e-4;
        let e = |i: usize| DVector::from_fn(d, |k, _| if k == i { h } else { 0.0 });
        let f0 = self.log_mod(s);
        let g = DVector::from_fn(d, |i, _| (self.log_mod(&(s + e(i))) - self.log_mod(&(s - e(i)))) / (2.0 * h));
        let hm = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                (self.log_mod(&(s + e(i))) - 2.0 * f0 + self.log_mod(&(s - e(i)))) / (h * h)
            } else {
                let (a, b) = (e(i), e(j));
                (self.log_mod(&(s + &a + &b)) - self.log_mod(&(s + &a - &b)) - self.log_mod(&(s - &a + &b))
                    + self.log_mod(&(s - &a - &b)))
                    / (4.0 * h * h)
            }
        });
        (g, hm)
    }

    fn mode(&self, d: usize) -> DVector<f64> {
        let mut s = DVector::zeros(d);
        for _ in 0..100 {
            let (g, hm) = self.grad_hess(&s);
            let step = (-hm).cholesky().expect("concave log-modulus").solve(&g);
            let f0 = self.log_mod(&s);
            let mut t = 1.0;
            while self.log_mod(&(&s + &step * t)) < f0 && t > 1e-6 {
                t *= 0.5;
            }
            s += step * t;
            if g.norm() < 1e-9 {
                break;
            }
        }
        s
    }
}

/// Importance sampling with a multivariate Student-t proposal around the integrand's mode.
#[test]
fn rank_three_agrees_with_monte_carlo() {
    let (lam, x) = ([0.0; 3], [0.0; 3]);
    let d = psi_dn(3, &lam, &x, &DnOptions::for_rank(3)).unwrap();
    let surface = Surface { f: dn_integrand(3, &lam, &x).unwrap().integrand, offsets: d.offsets.clone() };
    let dim = d.offsets.len();
    let mode = surface.mode(dim);
    let (_, hm) = surface.grad_hess(&mode);
    let cov = (-hm).try_inverse().unwrap() * 2.0;
    let chol = cov.clone().cholesky().unwrap();
    let l = chol.l();
    let dof = 5.0;
    // Γ((ν+d)/2) / Γ(ν/2) for ν = 5, d = 6: (9/2)(7/2)(5/2).
    let gamma_ratio: f64 = 4.5 * 3.5 * 2.5;
    let log_norm = gamma_ratio.ln() - 0.5 * dim as f64 * (dof * PI).ln() - l.diagonal().iter().map(|v| v.ln()).sum::<f64>();

    let mut rng = rand::rngs::StdRng::seed_from_u64(20261016);
    let chi = ChiSquared::new(dof).unwrap();
    let samples = 200_000;
    let (mut sum, mut sum_sq) = (Complex64::new(0.0, 0.0), 0.0);
    for _ in 0..samples {
        let z = DVector::from_fn(dim, |_, _| StandardNormal.sample(&mut rng));
        let w: f64 = chi.sample(&mut rng);
        let s = &mode + &l * &z * (dof / w).sqrt();
        let delta = z.norm_squared() * dof / w;
        let log_q = log_norm - 0.5 * (dof + dim as f64) * (1.0 + delta / dof).ln();
        let v = surface.f.eval(&surface.point(&s)).unwrap() / log_q.exp();
        sum += v;
        sum_sq += v.norm_sqr();
    }
    let n = samples as f64;
    let mean = sum / n;
    let sigma = ((sum_sq / n - mean.norm_sqr()).max(0.0) / n).sqrt();
    assert!(sigma < 2e-2 * mean.norm(), "poor proposal: sigma {sigma:e}, mean {mean}");
    let gap = (mean - d.wave.value).norm();
    assert!(gap <= 5.0 * sigma + 3.0 * d.wave.error, "quadrature {} vs MC {} ± {sigma:e}", d.wave.value, mean);
}
