//! End-to-end acceptance run: one line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_complex::Complex64;
use qtoda_core::kernels::{verify_recursive_intertwining, KernelId};
use qtoda_core::lax::{
    build_R, build_Rstar, verify_MN_intertwining, verify_MN_with, verify_det_identity, verify_factorization,
    MatrixKind, Mutation,
};
use qtoda_core::wavefunc::{
    chi_a1_report, eigen_residual, factorization_check, psi_d2, psi_dn, standard_grid, D2Options, DnOptions,
    EigenOperator, EigenOptions,
};
use qtoda_core::IdentityReport;

const FACTORIZATION_BUDGET: Duration = Duration::from_secs(30);
const DETERMINANT_BUDGET: Duration = Duration::from_secs(60);
const A1_RATIO_TOL: f64 = 1e-8;
const A1_POINT_BUDGET: Duration = Duration::from_secs(1);
const D2_RATIO_TOL: f64 = 1e-6;
const D2_BUDGET: Duration = Duration::from_secs(300);
const QUADRATIC_TOL: f64 = 1e-5;
const QUARTIC_TOL: f64 = 1e-4;
const EIGEN_BUDGET: Duration = Duration::from_secs(600);
const RECURSION_TOL: f64 = 1e-5;
const FORMS_TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn first_failure<'a>(reports: impl IntoIterator<Item = &'a IdentityReport>) -> Option<String> {
    reports.into_iter().find(|r| !r.passed).map(|r| {
        let loc = r.residuals.first().map(|x| x.location.clone()).unwrap_or_default();
        format!("{} n={} fails at {loc}", r.identity, r.rank)
    })
}

fn factorization() -> Outcome {
    let t = Instant::now();
    let reports: Vec<_> = (2..=5).map(verify_factorization).collect();
    let el = t.elapsed();
    match first_failure(&reports) {
        Some(f) => outcome(false, f),
        None => outcome(el <= FACTORIZATION_BUDGET, format!("n=2..5 exact, {el:.2?}")),
    }
}

fn golden() -> Outcome {
    let k = unit_kernel();
    let r_bad = mismatches(&build_R(&k).m, &tabulated_r());
    let rs_bad = mismatches(&build_Rstar(&k).m, &tabulated_rstar());
    let product = tabulated_r().checked_mul(&tabulated_rstar()).unwrap();
    let l_bad = mismatches(&built_l_bound(), &product);
    let tabulated_l_bad = mismatches(&tabulated_l(), &product);
    let pass = r_bad.is_empty() && rs_bad.is_empty() && l_bad.is_empty();
    let mut detail = format!(
        "R {} / R* {} / L {} mismatching entries",
        r_bad.len(),
        rs_bad.len(),
        l_bad.len()
    );
    if !tabulated_l_bad.is_empty() {
        detail.push_str(&format!(
            "; note: tabulated L disagrees with the product of the tabulated factors at {tabulated_l_bad:?}, built L follows the factors"
        ));
    }
    outcome(pass, detail)
}

fn determinant() -> Outcome {
    let t = Instant::now();
    let reports: Vec<_> = (2..=4).map(verify_det_identity).collect();
    let el = t.elapsed();
    match first_failure(&reports) {
        Some(f) => outcome(false, f),
        None => outcome(el <= DETERMINANT_BUDGET, format!("n=2..4 exact, {el:.2?}")),
    }
}

fn kernels() -> Outcome {
    let t = Instant::now();
    let mut reports = Vec::new();
    for id in KernelId::ALL {
        for n in 2..=4 {
            reports.push(id.case(n).verify());
        }
    }
    match first_failure(&reports) {
        Some(f) => outcome(false, f),
        None => outcome(true, format!("{} kernel/rank cases, hbar^0 and hbar^1 zero, {:.2?}", reports.len(), t.elapsed())),
    }
}

fn factor_matrices() -> Outcome {
    let reports: Vec<_> = (2..=3).map(verify_MN_intertwining).collect();
    if let Some(f) = first_failure(&reports) {
        return outcome(false, f);
    }
    let caught = [MatrixKind::M, MatrixKind::N]
        .iter()
        .all(|&k| (2..=3).all(|n| !verify_MN_with(n, Some(Mutation::CornerSign(k))).passed));
    outcome(caught, format!("n=2,3 exact; sign mutations of M and N {}", if caught { "detected" } else { "missed" }))
}

fn recursive() -> Outcome {
    let reports: Vec<_> = (1..=2).map(verify_recursive_intertwining).collect();
    match first_failure(&reports) {
        Some(f) => outcome(false, f),
        None => outcome(true, "k=1,2 exact at every power of the spectral value"),
    }
}

fn a1() -> Outcome {
    let mut worst_spread: f64 = 0.0;
    let mut slowest = Duration::ZERO;
    let mut ratios = Vec::new();
    for nu in [0.25, 0.5, 1.0] {
        let mut row = Vec::new();
        for y in [-1.0, 0.0, 1.0] {
            let t = Instant::now();
            let r = match chi_a1_report(nu, y) {
                Ok(r) => r,
                Err(e) => return outcome(false, format!("nu={nu} y={y}: {e}")),
            };
            slowest = slowest.max(t.elapsed());
            row.push(r.ratio);
        }
        let spread = row.iter().map(|r| (r - row[0]).norm()).fold(0.0, f64::max) / row[0].norm();
        worst_spread = worst_spread.max(spread);
        ratios.push(row[0]);
    }
    let pass = worst_spread <= A1_RATIO_TOL && slowest <= A1_POINT_BUDGET;
    outcome(
        pass,
        format!("ratio spread {worst_spread:.1e} (measured ratio {:.15}), slowest point {slowest:.2?}", ratios[0].re),
    )
}

fn d2_factorization() -> Outcome {
    let t = Instant::now();
    let r = match factorization_check(0.3, 0.7, &standard_grid(), &D2Options::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let el = t.elapsed();
    let disc = r.candidate_discrepancy().unwrap_or_default();
    outcome(
        r.is_constant(D2_RATIO_TOL) && el <= D2_BUDGET,
        format!(
            "spread {:.1e}, constant {:.10} (4e^(2 pi l2) = {:.10}); rescaled vs closed-form candidate: ratio {:.6}{:+.6}i, {el:.2?}",
            r.spread, r.mean.re, r.expected.re, disc.re, disc.im
        ),
    )
}

fn eigen() -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for (op, tol) in [(EigenOperator::Quadratic, QUADRATIC_TOL), (EigenOperator::Quartic, QUARTIC_TOL)] {
        match eigen_residual(op, 0.3, 0.7, (0.1, -0.2), &EigenOptions::for_operator(op)) {
            Ok(r) => {
                let res = r.residual.unwrap_or(f64::INFINITY);
                pass &= res <= tol;
                parts.push(format!("{op:?} {res:.1e} (floor {:.1e})", r.noise_floor));
            }
            Err(e) => return outcome(false, format!("{op:?}: {e}")),
        }
    }
    let el = t.elapsed();
    outcome(pass && el <= EIGEN_BUDGET, format!("{}, {el:.2?}", parts.join(", ")))
}

fn consistency() -> Outcome {
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm();
    let (l, x) = ([0.3, 0.7], [0.2, -0.1]);
    let run = || -> Result<(f64, f64), qtoda_core::wavefunc::WaveError> {
        let direct = psi_d2(l[0], l[1], x[0], x[1], &D2Options::default())?;
        let rec = psi_dn(2, &l, &x, &DnOptions::for_rank(2))?;
        let three = psi_d2(l[0], l[1], x[0], x[1], &D2Options::three_d())?;
        Ok((rel(rec.wave.value, direct.value), rel(three.value, direct.value)))
    };
    match run() {
        Ok((a, b)) => outcome(a <= RECURSION_TOL && b <= FORMS_TOL, format!("recursion vs direct {a:.1e}, two vs three variables {b:.1e}")),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("factorization", factorization),
        ("rank-four entries", golden),
        ("determinant identity", determinant),
        ("kernel intertwining", kernels),
        ("factor matrices", factor_matrices),
        ("recursive kernel", recursive),
        ("A1 closed form", a1),
        ("D2 factorization", d2_factorization),
        ("eigen residuals", eigen),
        ("consistency", consistency),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {}: {} {name}: {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
