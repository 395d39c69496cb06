//! Argument parsing and subcommand dispatch.

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use interleavings_core::oracle::{probe_solutions, ProbeOutcome};
use interleavings_core::variety::StatusHint;
use interleavings_core::{
    build_variety, classify, hom_life, match_distance, predicted_progression, progression,
    PersistenceModule, Rational,
};

use crate::format::{
    classify_doc, distance_doc, parse_module, progression_doc, render_variety, to_json,
    windows_doc, ProbeDoc,
};
use crate::report::run_verify;
use crate::timeline;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISCREPANCY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "interleavings",
    version,
    about = "Interleaving varieties and distances for interval-decomposable persistence modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Pair {
    /// Module file for M
    #[arg(long = "m", value_name = "FILE")]
    pub m: PathBuf,
    /// Module file for N
    #[arg(long = "n", value_name = "FILE")]
    pub n: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hom windows between all summands of M->N, N->M, M->M and N->N
    Window {
        #[command(flatten)]
        pair: Pair,
    },
    /// Interleaving distance (closed form for single intervals, matching otherwise)
    Distance {
        #[command(flatten)]
        pair: Pair,
    },
    /// Generators of the variety of epsilon-interleavings
    Variety {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "R", allow_hyphen_values = true)]
        epsilon: String,
        /// Search up to BUDGET random candidates for a verified witness
        #[arg(long, value_name = "BUDGET")]
        probe: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Class of the variety for single-interval modules
    Classify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "R", allow_hyphen_values = true)]
        epsilon: String,
    },
    /// Breakpoints and classes of the variety over all epsilon >= 0
    Progression {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Randomized sweeps checking progressions, hom lifetimes and the oracle
    Verify {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Interval pairs for the oracle-agreement sweep
        #[arg(long, default_value_t = 1_000)]
        oracle_samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn read_module(path: &Path) -> anyhow::Result<PersistenceModule> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_module(&text).with_context(|| format!("in {}", path.display()))
}

fn read_pair(pair: &Pair) -> anyhow::Result<(PersistenceModule, PersistenceModule)> {
    Ok((read_module(&pair.m)?, read_module(&pair.n)?))
}

fn read_epsilon(s: &str) -> anyhow::Result<Rational> {
    let e: Rational = s.parse().with_context(|| "invalid --epsilon")?;
    anyhow::ensure!(!e.is_negative(), "--epsilon must be non-negative, got {e}");
    Ok(e)
}

/// Single-interval input required by `classify` and `progression`.
#[derive(Debug, thiserror::Error)]
#[error("`{command}` needs single-interval modules: {source}")]
pub struct MultiSummandError {
    pub command: &'static str,
    pub source: interleavings_core::Error,
}

fn singles<'a>(
    command: &'static str,
    m: &'a PersistenceModule,
    n: &'a PersistenceModule,
) -> anyhow::Result<(&'a interleavings_core::IntervalModule, &'a interleavings_core::IntervalModule)> {
    let single = |p: &'a PersistenceModule| {
        p.as_single()
            .map_err(|source| MultiSummandError { command, source })
    };
    Ok((single(m)?, single(n)?))
}

fn execute(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Window { pair } => {
            let (m, n) = read_pair(&pair)?;
            Ok(Outcome::ok(to_json(&windows_doc(&m, &n))))
        }
        Command::Distance { pair } => {
            let (m, n) = read_pair(&pair)?;
            let matching = match_distance(&m, &n);
            let life = match (m.as_single(), n.as_single()) {
                (Ok(a), Ok(b)) => Some(hom_life(a, b)),
                _ => None,
            };
            if let Some(l) = &life {
                debug_assert_eq!(l.distance, matching.distance);
            }
            Ok(Outcome::ok(to_json(&distance_doc(life.as_ref(), &matching))))
        }
        Command::Variety {
            pair,
            epsilon,
            probe,
            seed,
        } => {
            let (m, n) = read_pair(&pair)?;
            let e = read_epsilon(&epsilon)?;
            let p = build_variety(&m, &n, &e)?;
            let text = match probe {
                None => render_variety(&p, None),
                Some(budget) => {
                    let outcome = probe_solutions(&p, budget, seed);
                    let doc = ProbeDoc::new(budget, seed, &outcome);
                    let mut p = p;
                    if let ProbeOutcome::WitnessFound(w) = outcome {
                        p.status_hint = StatusHint::WitnessFound;
                        p.witness = Some(w);
                    }
                    render_variety(&p, Some(doc))
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Classify { pair, epsilon } => {
            let (m, n) = read_pair(&pair)?;
            let (a, b) = singles("classify", &m, &n)?;
            let e = read_epsilon(&epsilon)?;
            Ok(Outcome::ok(to_json(&classify_doc(a, b, &e, classify(a, b, &e)))))
        }
        Command::Progression { pair, format } => {
            let (m, n) = read_pair(&pair)?;
            let (a, b) = singles("progression", &m, &n)?;
            let p = progression(a, b);
            let d = hom_life(a, b).distance;
            let text = match format {
                OutputFormat::Json => {
                    to_json(&progression_doc(a, b, &p, &d, &predicted_progression(a, b)))
                }
                OutputFormat::Text => timeline::render(a, b, &p, &d),
            };
            Ok(Outcome::ok(text))
        }
        Command::Verify {
            samples,
            oracle_samples,
            seed,
        } => {
            let doc = run_verify(samples, oracle_samples, seed);
            let code = if doc.passed { EXIT_OK } else { EXIT_DISCREPANCY };
            let stderr = if doc.passed {
                String::new()
            } else {
                "verification found discrepancies\n".into()
            };
            Ok(Outcome {
                code,
                stdout: to_json(&doc),
                stderr,
            })
        }
    }
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}
