//! Named check suites. Each check yields one or more report entries;
//! checks and their generated cases run in parallel and are reassembled in
//! name order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::corpus::Corpus;
use crate::error::{CliError, Result};
use crate::report::{Entry, Report, Status};

mod k0;
mod khom;
mod measures;
mod thm234;

pub const SUITES: [&str; 4] = ["khom", "k0", "thm234", "measures"];

pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub corpus: &'a Corpus,
}

pub struct Check {
    pub name: &'static str,
    run: fn(&Ctx) -> Vec<Entry>,
}

impl Check {
    const fn new(name: &'static str, run: fn(&Ctx) -> Vec<Entry>) -> Self {
        Check { name, run }
    }

    pub fn run(&self, ctx: &Ctx) -> Vec<Entry> {
        Entry::timed(|| (self.run)(ctx))
    }
}

pub fn checks(suite: &str) -> Result<Vec<Check>> {
    match suite {
        "khom" => Ok(khom::checks()),
        "k0" => Ok(k0::checks()),
        "thm234" => Ok(thm234::checks()),
        "measures" => Ok(measures::checks()),
        "all" => Ok(SUITES.iter().flat_map(|s| checks(s).unwrap()).collect()),
        _ => Err(CliError::UnknownSuite(suite.to_string())),
    }
}

pub fn run_checks(checks: &[Check], cfg: &RunConfig, corpus: &Corpus) -> Report {
    let ctx = Ctx { cfg, corpus };
    Report::new(checks.par_iter().flat_map(|c| c.run(&ctx)).collect())
}

pub fn run_suite(name: &str, cfg: &RunConfig, corpus: &Corpus) -> Result<Report> {
    cfg.validate()?;
    Ok(run_checks(&checks(name)?, cfg, corpus))
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// The generator for case `i` of `check`, independent of scheduling.
pub fn case_rng(seed: u64, check: &str, i: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
    r.set_stream(fnv(check));
    r
}

/// Runs `n` generated cases; the entry records how many held and the first
/// failing case index.
fn property(
    ctx: &Ctx,
    name: &str,
    n: usize,
    case: impl Fn(&mut ChaCha8Rng) -> weightk_core::Result<bool> + Sync,
) -> Entry {
    let outcomes: Vec<Result<bool, String>> = (0..n)
        .into_par_iter()
        .map(|i| case(&mut case_rng(ctx.cfg.seed, name, i)).map_err(|e| e.to_string()))
        .collect();
    let passed = outcomes.iter().filter(|o| matches!(o, Ok(true))).count();
    let e = Entry::new(name, Status::of(passed == n), format!("{passed}/{n}"), format!("{n}/{n}"));
    match outcomes.iter().position(|o| !matches!(o, Ok(true))) {
        None => e,
        Some(i) => e.with_detail(match &outcomes[i] {
            Err(msg) => format!("case {i} errored: {msg}"),
            _ => format!("first failing case {i}"),
        }),
    }
}

fn skip_if_empty(name: &str, empty: bool, what: &str) -> Option<Vec<Entry>> {
    empty.then(|| vec![Entry::skip(name, format!("corpus has no {what}"))])
}
