//! Conserved quantities read off characteristic polynomials of Lax matrices.

use qtoda_core::kernels::symbolic_couplings;
use qtoda_core::lax::{build_L, char_hamiltonians, quadratic_hamiltonian, Block, Family, LaxSpec};

use crate::report::HamiltonianRecord;
use crate::{usage, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Couplings {
    Unit,
    Symbolic,
}

pub const MAX_RANK: usize = 5;

/// Every coefficient of `det(L − λ)`: first the `u`-free ones by power of `λ` (highest first),
/// then the `u`-dependent ones by power of `u`, then the quadratic Hamiltonian.
pub fn coefficients(family: Family, rank: usize, couplings: Couplings) -> Result<Vec<HamiltonianRecord>, CliError> {
    if !(2..=MAX_RANK).contains(&rank) {
        return Err(usage(format!("rank must lie in 2..{MAX_RANK}")));
    }
    let spec = match couplings {
        Couplings::Unit => LaxSpec::unit(family, rank, Block::X),
        Couplings::Symbolic => LaxSpec::new(family, rank, symbolic_couplings(family.coupling_count(rank)), Block::X),
    };
    let l = build_L(&spec).map_err(|e| usage(e.to_string()))?;
    let ch = char_hamiltonians(&l);
    let label = match couplings {
        Couplings::Unit => "unit",
        Couplings::Symbolic => "symbolic",
    };
    let rec = |coefficient: String, value: String| HamiltonianRecord {
        record: "hamiltonian".into(),
        family: family.name().into(),
        rank,
        couplings: label.into(),
        coefficient,
        value,
    };
    let mut out: Vec<HamiltonianRecord> =
        ch.lambda_coeffs.iter().rev().map(|(k, p)| rec(format!("lam^{k}"), p.to_string())).collect();
    out.extend(ch.spectral.iter().map(|(k, p)| rec(format!("u^{k}"), p.to_string())));
    out.push(rec("H2".into(), quadratic_hamiltonian(&l).to_string()));
    Ok(out)
}
