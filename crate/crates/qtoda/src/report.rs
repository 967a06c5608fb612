//! Report records and their serialization. The field layout is documented in
//! `docs/report-schema.json`.

use std::io::Write;

use qtoda_core::IdentityReport;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Newline-delimited JSON.
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub location: String,
    pub value: String,
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub record: String,
    pub suite: String,
    pub identity: String,
    pub rank: usize,
    pub passed: bool,
    pub couplings: Vec<(String, String)>,
    pub residuals: Vec<ResidualRecord>,
    pub notes: Vec<String>,
}

impl IdentityRecord {
    pub fn new(suite: &str, r: &IdentityReport) -> Self {
        IdentityRecord {
            record: "identity".into(),
            suite: suite.into(),
            identity: r.identity.clone(),
            rank: r.rank,
            passed: r.passed,
            couplings: r.couplings.clone(),
            residuals: r.residuals.iter().map(|x| ResidualRecord { location: x.location.clone(), value: x.value.clone() }).collect(),
            notes: r.notes.clone(),
        }
    }
}

/// One wave-function value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveRecord {
    pub record: String,
    pub kind: String,
    pub n: usize,
    pub lambda: Vec<f64>,
    pub x: Vec<f64>,
    pub value_re: f64,
    pub value_im: f64,
    pub error: f64,
    pub nodes: usize,
    pub seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bessel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio_re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio_im: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contour_offsets: Option<Vec<f64>>,
}

impl WaveRecord {
    pub fn new(kind: &str, n: usize, lambda: Vec<f64>, x: Vec<f64>) -> Self {
        WaveRecord {
            record: "wave".into(),
            kind: kind.into(),
            n,
            lambda,
            x,
            value_re: 0.0,
            value_im: 0.0,
            error: 0.0,
            nodes: 0,
            seconds: 0.0,
            bessel: None,
            ratio_re: None,
            ratio_im: None,
            variables: None,
            contour_offsets: None,
        }
    }
}

/// Flat CSV row of a [`WaveRecord`]; vectors are joined with `;`.
#[derive(Clone, Debug, PartialEq, Serialize)]
struct WaveRow<'a> {
    kind: &'a str,
    n: usize,
    lambda: String,
    x: String,
    value_re: f64,
    value_im: f64,
    error: f64,
    nodes: usize,
    seconds: f64,
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRecord {
    pub xi: f64,
    pub eta: f64,
    pub psi_re: f64,
    pub psi_im: f64,
    pub error: f64,
    pub ratio_re: f64,
    pub ratio_im: f64,
    pub halved_ratio_re: f64,
    pub halved_ratio_im: f64,
}

/// Ratio test of the D₂ wave function against a product of two Macdonald functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationRecord {
    pub record: String,
    pub lambda: Vec<f64>,
    pub constant: bool,
    pub tolerance: f64,
    pub mean_re: f64,
    pub mean_im: f64,
    pub spread: f64,
    pub halved_spread: f64,
    pub expected_re: f64,
    pub expected_im: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub three_variable_constant: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form_candidate: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_discrepancy: Option<(f64, f64)>,
    pub seconds: f64,
    pub points: Vec<RatioRecord>,
}

/// Finite-difference eigenvalue residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenRecord {
    pub record: String,
    pub operator: String,
    pub lambda: Vec<f64>,
    pub x: Vec<f64>,
    pub eigenvalue: f64,
    pub psi_re: f64,
    pub psi_im: f64,
    pub residual: Option<f64>,
    pub noise_floor: f64,
    pub sample_error: f64,
    pub fd_step: f64,
    pub seconds: f64,
}

/// One coefficient of a characteristic polynomial, in canonical text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianRecord {
    pub record: String,
    pub family: String,
    pub rank: usize,
    pub couplings: String,
    pub coefficient: String,
    pub value: String,
}

/// Serialized writer for report records.
pub struct Sink {
    out: Box<dyn Write + Send>,
    format: Format,
    csv_header: bool,
}

impl Sink {
    pub fn new(out: Box<dyn Write + Send>, format: Format) -> Self {
        Sink { out, format, csv_header: false }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn json<T: Serialize>(&mut self, rec: &T) -> Result<(), CliError> {
        serde_json::to_writer(&mut self.out, rec).map_err(std::io::Error::from)?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    pub fn line(&mut self, text: &str) -> Result<(), CliError> {
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    pub fn wave(&mut self, rec: &WaveRecord) -> Result<(), CliError> {
        match self.format {
            Format::Json => self.json(rec),
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(!self.csv_header).from_writer(Vec::new());
                w.serialize(WaveRow {
                    kind: &rec.kind,
                    n: rec.n,
                    lambda: join(&rec.lambda),
                    x: join(&rec.x),
                    value_re: rec.value_re,
                    value_im: rec.value_im,
                    error: rec.error,
                    nodes: rec.nodes,
                    seconds: rec.seconds,
                })
                .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
                let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
                self.csv_header = true;
                self.out.write_all(&bytes)?;
                Ok(())
            }
            Format::Text => self.line(&format!(
                "{} n={} lambda={:?} x={:?} value={:+.15e}{:+.15e}i error={:.2e}",
                rec.kind, rec.n, rec.lambda, rec.x, rec.value_re, rec.value_im, rec.error
            )),
        }
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.out.flush()?;
        Ok(())
    }
}
