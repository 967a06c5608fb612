//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qtoda_core::kernels::KernelId;
use qtoda_core::lax::Family;
use qtoda_core::wavefunc::{standard_grid, D2Form, EigenOperator};

use crate::catalogue::Catalogue;
use crate::config::{parse_list, parse_mutation, parse_range, parse_ticks, square_grid, worker_count};
use crate::eval::{self, Common};
use crate::hamiltonians::{self, Couplings};
use crate::report::{Format, Sink};
use crate::verify::{self, Suite, VerifyConfig};
use crate::{exit, usage, CliError, WORKERS_ENV};

#[derive(Debug, Parser)]
#[command(name = "qtoda", version, about = "Exact and numeric checks for open Toda chains")]
pub struct Cli {
    /// Worker threads; overrides the QTODA_WORKERS environment variable.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run exact identity checks; exit 2 if any fails.
    Verify(VerifyArgs),
    /// Evaluate wave functions by contour quadrature; exit 3 if a quadrature fails.
    Eval(EvalArgs),
    /// Print the coefficients of a characteristic polynomial.
    Hamiltonians(HamiltonianArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Rank or inclusive rank range, e.g. `3` or `2..5`.
    #[arg(long)]
    pub rank: Option<String>,
    /// Lower rank range of the recursive suite.
    #[arg(long)]
    pub k: Option<String>,
    /// Restrict the kernels suite to one catalogue id.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Use symbolic couplings in the factorization and det suites.
    #[arg(long)]
    pub symbolic: bool,
    /// Inject a defect: `R:corner-sign`, `Rstar:corner-sign`, `M:corner-sign`, `N:corner-sign`,
    /// `drop-term:K` or `scale-term:K`.
    #[arg(long)]
    pub mutate: Option<String>,
    /// Kernel catalogue file; defaults to the bundled one.
    #[arg(long)]
    pub catalogue: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(subcommand)]
    pub target: EvalTarget,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Report zero seconds so that output is reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_timings: bool,
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum EvalTarget {
    /// Rank-one wave function against the Macdonald function.
    A1 {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
    /// D₂ wave function at one point or on a square grid of `(x₂₁, x₂₂)`.
    D2 {
        /// `λ₁,λ₂`
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// `x₂₁,x₂₂`
        #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
        x: Option<String>,
        /// `LO:HI:COUNT` ticks on both axes.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Also integrate the power factor, over a third variable.
        #[arg(long)]
        three: bool,
    },
    /// Ratio of the D₂ wave function to a product of two Macdonald functions.
    D2check {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// `LO:HI:COUNT` ticks in `ξ` and `η`; defaults to `-1:1:3`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Finite-difference eigenvalue residual of the D₂ wave function.
    Eigen {
        #[arg(long, value_enum)]
        op: Operator,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0.1,-0.2")]
        x: String,
        #[arg(long)]
        fd_step: Option<f64>,
    },
    /// Dₙ wave function through the recursive kernels (`n` = 2 or 3).
    Dn {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Initial trapezoid step.
        #[arg(long)]
        step: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Operator {
    Quadratic,
    Quartic,
}

#[derive(Debug, Args)]
pub struct HamiltonianArgs {
    /// `twistedA`, `C` or `D`.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=hamiltonians::MAX_RANK as i64))]
    pub rank: u32,
    #[arg(long, value_enum, default_value = "unit")]
    pub couplings: Couplings,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family `{s}`; expected twistedA, C or D"))
}

fn open(out: &Option<PathBuf>) -> Result<Box<dyn Write + Send>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn pair(what: &str, s: &str) -> Result<[f64; 2], CliError> {
    let v = parse_list(what, s, 2)?;
    Ok([v[0], v[1]])
}

fn run_verify(a: VerifyArgs, sink: &mut Sink) -> Result<i32, CliError> {
    let cat = match &a.catalogue {
        Some(p) => Catalogue::load(p).map_err(|e| usage(e.to_string()))?,
        None => Catalogue::builtin(),
    };
    let ranks = match (&a.rank, &a.k, a.suite) {
        (Some(_), Some(_), _) => return Err(usage("give either --rank or --k")),
        (_, Some(_), s) if s != Suite::Recursive => return Err(usage("--k only applies to the recursive suite")),
        (Some(r), None, _) | (None, Some(r), _) => Some(parse_range(r)?),
        (None, None, _) => None,
    };
    let kernel = match &a.kernel {
        Some(k) => Some(KernelId::parse(k).ok_or_else(|| usage(format!("unknown kernel `{k}`")))?),
        None => None,
    };
    let mutation = a.mutate.as_deref().map(parse_mutation).transpose()?;
    let cfg = VerifyConfig { suite: a.suite, ranks, kernel, symbolic: a.symbolic, mutation };
    let records = verify::run(&cfg, &cat)?;
    for r in &records {
        match sink.format() {
            Format::Json => sink.json(r)?,
            Format::Text => sink.line(&format!(
                "{} {} n={}: {}{}",
                if r.passed { "PASS" } else { "FAIL" },
                r.suite,
                r.rank,
                r.identity,
                r.residuals.first().map(|x| format!(" [{}: {}]", x.location, x.value)).unwrap_or_default()
            ))?,
            Format::Csv => return Err(usage("verify reports are json or text")),
        }
    }
    Ok(if records.iter().all(|r| r.passed) { exit::OK } else { exit::IDENTITY_FAILED })
}

fn run_eval(a: EvalArgs, sink: &mut Sink) -> Result<i32, CliError> {
    let c = Common { tol: a.tol, no_timings: a.no_timings };
    let structured = |sink: &Sink| -> Result<(), CliError> {
        if sink.format() == Format::Csv {
            return Err(usage("this evaluation produces json or text only"));
        }
        Ok(())
    };
    match a.target {
        EvalTarget::A1 { nu, y } => {
            let r = eval::a1(nu, y, &c)?;
            sink.wave(&r)?;
        }
        EvalTarget::D2 { lambda, x, grid, three } => {
            let lambda = pair("--lambda", &lambda)?;
            let points = match (x, grid) {
                (Some(x), None) => {
                    let p = pair("--x", &x)?;
                    vec![(p[0], p[1])]
                }
                (None, Some(g)) => square_grid(&parse_ticks(&g)?),
                _ => return Err(usage("give --x or --grid")),
            };
            let form = if three { D2Form::ThreeD } else { D2Form::TwoD };
            for r in eval::d2(lambda, &points, form, &c)? {
                sink.wave(&r)?;
            }
        }
        EvalTarget::D2check { lambda, grid } => {
            structured(sink)?;
            let lambda = pair("--lambda", &lambda)?;
            let grid = match grid {
                Some(g) => square_grid(&parse_ticks(&g)?),
                None => standard_grid(),
            };
            let r = eval::d2check(lambda, &grid, &c)?;
            match sink.format() {
                Format::Text => sink.line(&format!(
                    "spread {:.2e} ({}), constant {:.12}{:+.12}i, halved-order spread {:.2e}",
                    r.spread,
                    if r.constant { "constant" } else { "not constant" },
                    r.mean_re,
                    r.mean_im,
                    r.halved_spread
                ))?,
                _ => sink.json(&r)?,
            }
        }
        EvalTarget::Eigen { op, lambda, x, fd_step } => {
            structured(sink)?;
            let op = match op {
                Operator::Quadratic => EigenOperator::Quadratic,
                Operator::Quartic => EigenOperator::Quartic,
            };
            let r = eval::eigen(op, pair("--lambda", &lambda)?, pair("--x", &x)?, fd_step, &c)?;
            match sink.format() {
                Format::Text => sink.line(&format!(
                    "{} residual {} noise floor {:.2e}",
                    r.operator,
                    r.residual.map_or("undefined".to_string(), |v| format!("{v:.2e}")),
                    r.noise_floor
                ))?,
                _ => sink.json(&r)?,
            }
        }
        EvalTarget::Dn { n, lambda, x, step } => {
            if !(2..=3).contains(&n) {
                return Err(usage("--n must be 2 or 3"));
            }
            let lambda = parse_list("--lambda", &lambda, n)?;
            let x = parse_list("--x", &x, n)?;
            let r = eval::dn(n, &lambda, &x, step, &c)?;
            sink.wave(&r)?;
        }
    }
    Ok(exit::OK)
}

fn run_hamiltonians(a: HamiltonianArgs, sink: &mut Sink) -> Result<i32, CliError> {
    let recs = hamiltonians::coefficients(a.family, a.rank as usize, a.couplings)?;
    for r in &recs {
        match sink.format() {
            Format::Json => sink.json(r)?,
            Format::Text => sink.line(&format!("{}: {}", r.coefficient, r.value))?,
            Format::Csv => return Err(usage("hamiltonians are printed as text or json")),
        }
    }
    Ok(exit::OK)
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    let workers = worker_count(cli.workers, std::env::var(WORKERS_ENV).ok())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| usage(format!("worker pool: {e}")))?;
    let format = match &cli.command {
        Command::Verify(a) => a.format,
        Command::Eval(a) => a.format,
        Command::Hamiltonians(a) => a.format,
    };
    let mut sink = Sink::new(open(&cli.out)?, format);
    let code = pool.install(|| match cli.command {
        Command::Verify(a) => run_verify(a, &mut sink),
        Command::Eval(a) => run_eval(a, &mut sink),
        Command::Hamiltonians(a) => run_hamiltonians(a, &mut sink),
    })?;
    sink.finish()?;
    Ok(code)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qtoda: {e}");
            e.code()
        }
    }
}
