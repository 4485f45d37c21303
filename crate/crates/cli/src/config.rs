use std::path::PathBuf;

use serde::Serialize;
use weightk_core::komplex::generate::GenConfig;
use weightk_core::zmod::is_prime;

use crate::error::{CliError, Result};

/// Number of generated cases per property check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseCounts {
    pub equivalences: usize,
    pub weak_pairs: usize,
    pub orthogonality: usize,
    pub splitting: usize,
    /// Everything else, including the motif-level generators.
    pub other: usize,
}

impl Default for CaseCounts {
    fn default() -> Self {
        Self { equivalences: 200, weak_pairs: 200, orthogonality: 100, splitting: 100, other: 100 }
    }
}

impl CaseCounts {
    pub fn uniform(k: usize) -> Self {
        Self { equivalences: k, weak_pairs: k, orthogonality: k, splitting: k, other: k }
    }

    fn min(&self) -> usize {
        [self.equivalences, self.weak_pairs, self.orthogonality, self.splitting, self.other].into_iter().min().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub ell: u64,
    /// Report the weight spectral sequence over `Q` rather than `Z_l`.
    pub rational: bool,
    pub corpus: Vec<PathBuf>,
    pub seed: u64,
    pub cases: CaseCounts,
    pub max_rank: usize,
    pub max_len: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ell: 2,
            rational: false,
            corpus: Vec::new(),
            seed: 1,
            cases: CaseCounts::default(),
            max_rank: 4,
            max_len: 5,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.ell) {
            return Err(CliError::Config(format!("ell = {} is not prime", self.ell)));
        }
        if self.cases.min() == 0 || self.max_rank == 0 || self.max_len == 0 {
            return Err(CliError::Config("case counts and size bounds must be at least 1".into()));
        }
        Ok(())
    }

    pub fn gen(&self) -> GenConfig {
        GenConfig { max_rank: self.max_rank, max_len: self.max_len }
    }
}
