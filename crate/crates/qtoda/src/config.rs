//! Parsing of the compact argument syntaxes: ranges, lists, grids and mutations.

use std::ops::RangeInclusive;

use qtoda_core::lax::{MatrixKind, Mutation};

use crate::{usage, CliError};

/// `"3"` or `"2..5"` (inclusive).
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || usage(format!("bad range `{s}`; expected N or A..B"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

/// Checks `r` against the supported ranks of a suite.
pub fn check_range(what: &str, r: &RangeInclusive<usize>, allowed: RangeInclusive<usize>) -> Result<(), CliError> {
    if r.start() < allowed.start() || r.end() > allowed.end() {
        return Err(usage(format!(
            "{what}: {}..{} is outside the supported range {}..{}",
            r.start(),
            r.end(),
            allowed.start(),
            allowed.end()
        )));
    }
    Ok(())
}

/// Comma-separated floats with an exact expected length.
pub fn parse_list(what: &str, s: &str, len: usize) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("{what}: `{s}` is not a comma-separated list of numbers")))?;
    if v.len() != len {
        return Err(usage(format!("{what}: expected {len} values, got {}", v.len())));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(usage(format!("{what}: values must be finite")));
    }
    Ok(v)
}

/// `"lo:hi:count"`: `count` equally spaced ticks including both ends.
pub fn parse_ticks(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || usage(format!("bad grid `{s}`; expected LO:HI:COUNT"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count == 0 || !(lo <= hi) || (count == 1 && lo != hi) {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect())
}

/// Square grid of tick pairs, first coordinate slowest.
pub fn square_grid(ticks: &[f64]) -> Vec<(f64, f64)> {
    ticks.iter().flat_map(|&a| ticks.iter().map(move |&b| (a, b))).collect()
}

/// `"R:corner-sign"`, `"Rstar:corner-sign"`, `"M:corner-sign"`, `"N:corner-sign"`,
/// `"drop-term:K"` or `"scale-term:K"` (K 0-based).
pub fn parse_mutation(s: &str) -> Result<Mutation, CliError> {
    let bad = || usage(format!("bad mutation `{s}`"));
    let (head, tail) = s.split_once(':').ok_or_else(bad)?;
    match (head, tail) {
        (kind, "corner-sign") => {
            let kind = match kind {
                "R" => MatrixKind::R,
                "Rstar" | "R*" => MatrixKind::Rstar,
                "M" => MatrixKind::M,
                "N" => MatrixKind::N,
                _ => return Err(bad()),
            };
            Ok(Mutation::CornerSign(kind))
        }
        ("drop-term", k) => Ok(Mutation::DropKernelTerm(k.parse().map_err(|_| bad())?)),
        ("scale-term", k) => Ok(Mutation::ScaleKernelTerm(k.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// Worker count from the flag, then the environment, then the number of CPUs.
pub fn worker_count(flag: Option<usize>, env: Option<String>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return if n == 0 { Err(usage("--workers must be positive")) } else { Ok(n) };
    }
    match env {
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(usage(format!("{}=`{v}` is not a positive integer", crate::WORKERS_ENV))),
        },
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5").unwrap(), 2..=5);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn ticks() {
        assert_eq!(parse_ticks("-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(parse_ticks("0:0:1").unwrap(), vec![0.0]);
        assert!(parse_ticks("1:-1:3").is_err());
        assert!(parse_ticks("0:1:0").is_err());
        assert_eq!(square_grid(&[0.0, 1.0]).len(), 4);
    }

    #[test]
    fn mutations() {
        assert_eq!(parse_mutation("N:corner-sign").unwrap(), Mutation::CornerSign(MatrixKind::N));
        assert_eq!(parse_mutation("drop-term:3").unwrap(), Mutation::DropKernelTerm(3));
        assert!(parse_mutation("Q:corner-sign").is_err());
    }

    #[test]
    fn workers() {
        assert_eq!(worker_count(Some(3), Some("7".into())).unwrap(), 3);
        assert_eq!(worker_count(None, Some("7".into())).unwrap(), 7);
        assert!(worker_count(None, Some("zero".into())).is_err());
        assert!(worker_count(Some(0), None).is_err());
    }
}
