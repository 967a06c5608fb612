//! The kernel catalogue: which intertwining kernels the `kernels` suite runs, at which ranks.

use std::path::Path;

use qtoda_core::kernels::KernelId;
use serde::Deserialize;

/// Catalogue bundled with the binary.
pub const BUILTIN: &str = include_str!("../data/kernels.toml");
pub const SUPPORTED_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Catalogue {
    pub version: u32,
    #[serde(rename = "kernel")]
    pub kernels: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Entry {
    pub id: String,
    pub description: String,
    pub left: Chain,
    pub right: Chain,
    pub ranks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Chain {
    pub family: String,
    pub block: String,
    /// Rank of this chain relative to the kernel rank.
    #[serde(default)]
    pub rank_offset: i32,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogueError {
    #[error("catalogue is not valid TOML: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("catalogue version {0} is not supported")]
    Version(u32),
    #[error("unknown kernel id `{0}`")]
    UnknownId(String),
    #[error("kernel `{0}` lists rank {1}; ranks start at 2")]
    Rank(String, usize),
    #[error("reading catalogue: {0}")]
    Io(#[from] std::io::Error),
}

impl Catalogue {
    pub fn builtin() -> Catalogue {
        Catalogue::parse(BUILTIN).expect("bundled catalogue is valid")
    }

    pub fn parse(text: &str) -> Result<Catalogue, CatalogueError> {
        let c: Catalogue = toml::from_str(text)?;
        if c.version != SUPPORTED_VERSION {
            return Err(CatalogueError::Version(c.version));
        }
        for e in &c.kernels {
            if KernelId::parse(&e.id).is_none() {
                return Err(CatalogueError::UnknownId(e.id.clone()));
            }
            if let Some(&r) = e.ranks.iter().find(|&&r| r < 2) {
                return Err(CatalogueError::Rank(e.id.clone(), r));
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Catalogue, CatalogueError> {
        Catalogue::parse(&std::fs::read_to_string(path)?)
    }

    pub fn ids(&self) -> impl Iterator<Item = (KernelId, &Entry)> {
        self.kernels.iter().map(|e| (KernelId::parse(&e.id).expect("validated on load"), e))
    }
}
