use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use weightk::corpus::{atoms_for, build_complex, read_complex_file, read_expr_file};
use weightk::{load_corpus, run_suite, CaseCounts, CliError, Corpus, Entry, Report, RunConfig, Status};
use weightk_core::motif::{
    class_of, euler_identity_check, is_cellular, lefschetz_specialize, point_count, pure_dimension, weight_ss,
    Coefficients, Mode,
};

#[derive(Parser)]
#[command(name = "weightk", version, about = "Weight complexes, K0 classes and motive tables")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// The prime l of the cohomology tables.
    #[arg(long, default_value_t = 2, global = true)]
    ell: u64,
    /// Extra corpus directories (atoms/, expressions/, complexes/).
    #[arg(long, global = true)]
    corpus: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Graded K0 class of an expression.
    Class {
        file: PathBuf,
        /// `m` for the motive, `c` for compact supports.
        #[arg(long, default_value = "m")]
        mode: String,
    },
    /// The Euler identity E^n(M^c) = F^{n+1}(M) + G^n(M).
    Euler {
        file: PathBuf,
        /// A single degree; all of [0, 2d] when omitted.
        #[arg(long)]
        n: Option<i32>,
    },
    /// Weight spectral sequence of a complex file.
    Wss {
        file: PathBuf,
        #[arg(long)]
        rational: bool,
    },
    /// Run the identity checks on one corpus directory.
    Check {
        #[arg(value_parser = ["thm234"])]
        what: String,
        dir: PathBuf,
    },
    /// Point count over F_q, cross-checked against the Lefschetz
    /// specialization when the expression is cellular.
    Count {
        file: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// Run a named suite: khom, k0, thm234, measures or all.
    Suite {
        name: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Cases per property check; the per-check defaults otherwise.
        #[arg(long)]
        cases: Option<usize>,
        /// Run without the built-in corpus.
        #[arg(long)]
        no_corpus: bool,
        /// Append wall times to the human report.
        #[arg(long)]
        timings: bool,
    },
}

struct Output {
    human: String,
    json: serde_json::Value,
    code: u8,
}

impl Output {
    fn report(r: &Report, timings: bool) -> Self {
        Output {
            human: r.render_human(timings),
            json: serde_json::to_value(r).expect("report serializes"),
            code: r.exit_code() as u8,
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let cfg = RunConfig { ell: cli.ell, corpus: cli.corpus.clone(), ..RunConfig::default() };
    cfg.validate()?;
    match &cli.command {
        Command::Class { file, mode } => {
            let atoms = atoms_for(&cfg.corpus, cfg.ell)?;
            let f = read_expr_file(file)?;
            let mode: Mode = mode.parse()?;
            let c = class_of(&f.expr, mode, &atoms)?;
            Ok(Output {
                human: format!("{}  dim {}  {}\n", f.name, c.dim, c.class),
                json: json!({"name": f.name, "mode": mode, "dim": c.dim, "class": c.class}),
                code: 0,
            })
        }
        Command::Euler { file, n } => {
            let atoms = atoms_for(&cfg.corpus, cfg.ell)?;
            let f = read_expr_file(file)?;
            let d = pure_dimension(&f.expr, &atoms)? as i32;
            let ns: Vec<i32> = n.map_or_else(|| (0..=2 * d).collect(), |n| vec![n]);
            let rep = euler_identity_check(&f.expr, &atoms, ns)?;
            let entries = rep
                .rows
                .iter()
                .map(|r| Entry::compare(format!("euler/{}/n={}", f.name, r.n), r.lhs.to_string(), r.rhs.to_string()))
                .collect();
            Ok(Output::report(&Report::new(entries), false))
        }
        Command::Wss { file, rational } => {
            let atoms = atoms_for(&cfg.corpus, cfg.ell)?;
            let cf = read_complex_file(file)?;
            let n = build_complex(&cf, &atoms).map_err(|source| CliError::Invalid { path: file.clone(), source })?;
            let coeff = if *rational || cfg.rational { Coefficients::Rational } else { Coefficients::Integral };
            let ss = weight_ss(&n, coeff)?;
            let page = |m: &std::collections::BTreeMap<(i32, i32), weightk_core::FgModule>| {
                m.iter().map(|((p, q), v)| format!("  E^({p},{q}) = {v}\n")).collect::<String>()
            };
            let abut: String = ss.abutment.iter().map(|(k, v)| format!("  H^{k} = {v}\n")).collect();
            let human = format!(
                "{} ({:?})\nE1:\n{}E2:\n{}abutment:\n{}{}\n",
                cf.name,
                coeff,
                page(&ss.e1),
                page(&ss.e2),
                abut,
                if ss.degenerate { "degenerate at E2" } else { "NOT degenerate at E2" }
            );
            let cells = |m: &std::collections::BTreeMap<(i32, i32), weightk_core::FgModule>| {
                m.iter().map(|((p, q), v)| json!({"p": p, "q": q, "module": v})).collect::<Vec<_>>()
            };
            Ok(Output {
                human,
                json: json!({
                    "name": cf.name,
                    "coefficients": coeff,
                    "e1": cells(&ss.e1),
                    "e2": cells(&ss.e2),
                    "abutment": ss.abutment,
                    "degenerate": ss.degenerate,
                }),
                code: if ss.degenerate { 0 } else { 1 },
            })
        }
        Command::Check { dir, .. } => {
            let corpus = load_corpus(std::slice::from_ref(dir), cfg.ell)?;
            Ok(Output::report(&run_suite("thm234", &cfg, &corpus)?, false))
        }
        Command::Count { file, q } => {
            let atoms = atoms_for(&cfg.corpus, cfg.ell)?;
            let f = read_expr_file(file)?;
            let count = point_count(&f.expr, *q, &atoms)?;
            let name = format!("count/{}/q={q}", f.name);
            let entry = if is_cellular(&f.expr, &atoms) {
                let c = class_of(&f.expr, Mode::CompactSupport, &atoms)?;
                Entry::compare(name, count, lefschetz_specialize(&c, *q)?).with_detail("point count vs Lefschetz")
            } else {
                Entry::new(name, Status::Pass, count, "").with_detail("not cellular; no cross-check")
            };
            Ok(Output::report(&Report::new(vec![entry]), false))
        }
        Command::Suite { name, seed, cases, no_corpus, timings } => {
            let cfg = RunConfig { seed: *seed, cases: cases.map_or_else(CaseCounts::default, CaseCounts::uniform), ..cfg };
            cfg.validate()?;
            let corpus = if *no_corpus {
                load_corpus(&cfg.corpus, cfg.ell)?
            } else if cfg.corpus.is_empty() {
                Corpus::builtin(cfg.ell)?
            } else {
                load_corpus(&cfg.corpus, cfg.ell)?
            };
            Ok(Output::report(&run_suite(name, &cfg, &corpus)?, *timings))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Human => print!("{}", out.human),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json output")),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
