//! The exact identity suites.

use std::ops::RangeInclusive;

use qtoda_core::kernels::{
    compose_baxter, reference_couplings, verify_h2_intertwining, verify_recursive_intertwining, Block, KernelId,
};
use qtoda_core::laurent::GaussianRational;
use qtoda_core::lax::{
    coupling_limit_kernels, verify_MN_with, verify_det_with, verify_factorization_with, FactorizationCase, Mutation,
};
use qtoda_core::IdentityReport;
use rayon::prelude::*;

use crate::catalogue::Catalogue;
use crate::config::check_range;
use crate::report::IdentityRecord;
use crate::{usage, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// `L = R R*` and `L' = R* R` for the twisted chain.
    Factorization,
    /// Equal characteristic polynomials of the two twisted Lax matrices.
    Det,
    /// Quadratic intertwining of every catalogue kernel.
    Kernels,
    /// Intertwining by the D-to-C factor matrices.
    Mn,
    /// Recursive kernel lowering the D rank by one.
    Recursive,
    /// Coupling limits relating the kernels.
    Limits,
    /// Composition of two twisted kernels.
    Baxter,
    /// Every suite at its default ranks.
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Factorization => "factorization",
            Suite::Det => "det",
            Suite::Kernels => "kernels",
            Suite::Mn => "mn",
            Suite::Recursive => "recursive",
            Suite::Limits => "limits",
            Suite::Baxter => "baxter",
            Suite::All => "all",
        }
    }

    /// Supported and default rank ranges (for `recursive`, the lower rank `k`).
    pub fn ranks(self) -> (RangeInclusive<usize>, RangeInclusive<usize>) {
        match self {
            Suite::Factorization => (2..=6, 2..=5),
            Suite::Det => (2..=4, 2..=4),
            Suite::Kernels => (2..=5, 2..=4),
            Suite::Mn => (2..=4, 2..=3),
            Suite::Recursive => (1..=2, 1..=2),
            Suite::Limits => (2..=5, 2..=4),
            Suite::Baxter => (2..=4, 2..=3),
            Suite::All => (2..=2, 2..=2),
        }
    }

    /// Whether `m` changes anything this suite looks at.
    fn accepts(self, m: Mutation) -> bool {
        use qtoda_core::lax::MatrixKind as K;
        match (self, m) {
            (Suite::Factorization, Mutation::CornerSign(k)) => matches!(k, K::R | K::Rstar),
            (Suite::Mn, Mutation::CornerSign(k)) => matches!(k, K::M | K::N),
            (Suite::Factorization | Suite::Det | Suite::Mn | Suite::Kernels, Mutation::DropKernelTerm(_) | Mutation::ScaleKernelTerm(_)) => true,
            _ => false,
        }
    }

    pub const CONCRETE: [Suite; 7] =
        [Suite::Factorization, Suite::Det, Suite::Kernels, Suite::Mn, Suite::Recursive, Suite::Limits, Suite::Baxter];
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub ranks: Option<RangeInclusive<usize>>,
    pub kernel: Option<KernelId>,
    pub symbolic: bool,
    pub mutation: Option<Mutation>,
}

/// One unit of work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Job {
    Factorization(usize),
    Det(usize),
    Kernel(KernelId, usize),
    Mn(usize),
    Recursive(usize),
    Limits(usize),
    Baxter(usize),
}

impl Job {
    fn suite(self) -> Suite {
        match self {
            Job::Factorization(_) => Suite::Factorization,
            Job::Det(_) => Suite::Det,
            Job::Kernel(..) => Suite::Kernels,
            Job::Mn(_) => Suite::Mn,
            Job::Recursive(_) => Suite::Recursive,
            Job::Limits(_) => Suite::Limits,
            Job::Baxter(_) => Suite::Baxter,
        }
    }
}

fn jobs_for(suite: Suite, ranks: RangeInclusive<usize>, cfg: &VerifyConfig, cat: &Catalogue) -> Vec<Job> {
    match suite {
        Suite::Kernels => {
            let mut out = Vec::new();
            for (id, entry) in cat.ids() {
                if cfg.kernel.is_some_and(|k| k != id) {
                    continue;
                }
                let listed: Vec<usize> = if cfg.ranks.is_some() { ranks.clone().collect() } else { entry.ranks.clone() };
                out.extend(listed.into_iter().map(|n| Job::Kernel(id, n)));
            }
            out
        }
        Suite::Factorization => ranks.map(Job::Factorization).collect(),
        Suite::Det => ranks.map(Job::Det).collect(),
        Suite::Mn => ranks.map(Job::Mn).collect(),
        Suite::Recursive => ranks.map(Job::Recursive).collect(),
        Suite::Limits => ranks.map(Job::Limits).collect(),
        Suite::Baxter => ranks.map(Job::Baxter).collect(),
        Suite::All => Vec::new(),
    }
}

/// Expands and validates a configuration into jobs.
fn plan(cfg: &VerifyConfig, cat: &Catalogue) -> Result<Vec<Job>, CliError> {
    if let Some(m) = cfg.mutation {
        if cfg.suite == Suite::All || !cfg.suite.accepts(m) {
            return Err(usage(format!("mutation {m:?} does not apply to suite `{}`", cfg.suite.name())));
        }
    }
    if cfg.kernel.is_some() && cfg.suite != Suite::Kernels {
        return Err(usage("--kernel only applies to the kernels suite"));
    }
    if cfg.symbolic && !matches!(cfg.suite, Suite::Factorization | Suite::Det) {
        return Err(usage("--symbolic only applies to the factorization and det suites"));
    }
    if cfg.suite == Suite::All {
        if cfg.ranks.is_some() {
            return Err(usage("--rank cannot be combined with --suite all"));
        }
        return Ok(Suite::CONCRETE.iter().flat_map(|&s| jobs_for(s, s.ranks().1, cfg, cat)).collect());
    }
    let (allowed, default) = cfg.suite.ranks();
    let ranks = cfg.ranks.clone().unwrap_or(default);
    check_range(cfg.suite.name(), &ranks, allowed)?;
    Ok(jobs_for(cfg.suite, ranks, cfg, cat))
}

fn mutate_kernel(m: Mutation, f: &mut qtoda_core::kernels::GenFunc) {
    match m {
        Mutation::DropKernelTerm(k) if k < f.terms.len() => {
            f.terms.remove(k);
        }
        Mutation::ScaleKernelTerm(k) if k < f.terms.len() => {
            f.terms[k].coeff = f.terms[k].coeff.scale(&GaussianRational::from_int(2));
        }
        _ => {}
    }
}

fn run_job(job: Job, cfg: &VerifyConfig) -> IdentityReport {
    let case = |n: usize| {
        let c = if cfg.symbolic { FactorizationCase::symbolic(n) } else { FactorizationCase::reference(n) };
        match cfg.mutation {
            Some(m) => c.mutate(m),
            None => c,
        }
    };
    match job {
        Job::Factorization(n) => verify_factorization_with(&case(n)),
        Job::Det(n) => verify_det_with(&case(n)),
        Job::Mn(n) => verify_MN_with(n, cfg.mutation),
        Job::Recursive(k) => verify_recursive_intertwining(k),
        Job::Limits(n) => coupling_limit_kernels(n),
        Job::Kernel(id, n) => {
            let c = id.case(n);
            match cfg.mutation {
                None => c.verify(),
                Some(m) => {
                    let mut f = c.kernel.clone();
                    mutate_kernel(m, &mut f);
                    let mut r = verify_h2_intertwining(&f, &c.left, &c.right);
                    r.identity = format!("{}: {}", id.name(), r.identity);
                    r.note(format!("mutation: {m:?}"));
                    r
                }
            }
        }
        Job::Baxter(n) => {
            let q = compose_baxter(&reference_couplings(n), Block::X, Block::Y);
            let swapped = compose_baxter(&reference_couplings(n), Block::Y, Block::X);
            let mut r = IdentityReport::new("composed kernel commutes and is symmetric in its outer blocks", n);
            for (k, part) in q.reports.iter().enumerate() {
                r.absorb(&format!("factor {}", k + 1), part);
            }
            if q.swap_outer().canonical_text() != swapped.canonical_text() {
                r.fail("swapping the outer blocks changes the composed kernel");
            }
            r.note(q.derivation.clone());
            r
        }
    }
}

/// Runs every job of `cfg` on the current rayon pool, in a fixed output order.
pub fn run(cfg: &VerifyConfig, cat: &Catalogue) -> Result<Vec<IdentityRecord>, CliError> {
    let jobs = plan(cfg, cat)?;
    Ok(jobs.par_iter().map(|&j| IdentityRecord::new(j.suite().name(), &run_job(j, cfg))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite) -> VerifyConfig {
        VerifyConfig { suite, ranks: None, kernel: None, symbolic: false, mutation: None }
    }

    #[test]
    fn all_expands_to_every_suite() {
        let jobs = plan(&cfg(Suite::All), &Catalogue::builtin()).unwrap();
        for s in Suite::CONCRETE {
            assert!(jobs.iter().any(|j| j.suite() == s), "{s:?}");
        }
    }

    #[test]
    fn rejects_out_of_range_and_misplaced_flags() {
        let cat = Catalogue::builtin();
        let mut c = cfg(Suite::Factorization);
        c.ranks = Some(1..=3);
        assert!(plan(&c, &cat).is_err());
        let mut c = cfg(Suite::Recursive);
        c.mutation = Some(Mutation::DropKernelTerm(0));
        assert!(plan(&c, &cat).is_err());
        let mut c = cfg(Suite::Mn);
        c.kernel = Some(KernelId::DToC);
        assert!(plan(&c, &cat).is_err());
    }
}
