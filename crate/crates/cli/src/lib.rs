//! Batch front end for `weightk-core`: corpus loading, named check suites
//! and deterministic reports.

pub mod config;
pub mod corpus;
pub mod error;
pub mod report;
pub mod suites;

pub use config::{CaseCounts, RunConfig};
pub use corpus::{load_corpus, Corpus};
pub use error::{CliError, Result};
pub use report::{Entry, Report, Status};
pub use suites::{checks, run_checks, run_suite};
