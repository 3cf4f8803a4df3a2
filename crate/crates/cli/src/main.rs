use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coxeter_core::dynamics::EssentialityParams;
use coxeter_core::oracle::DEFAULT_CAP;
use coxeter_core::report::{self, CompareMode, Report};
use coxeter_core::roots::{CoxeterSystem, Word};
use coxeter_core::{parse_spec, CoxeterError, CoxeterGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Exact computations with Coxeter groups: classification, root dynamics,
/// essentiality and direct-product decompositions.
///
/// A SPEC is a product expression ("~A2 x B3 x (3,3,7)"), an explicit
/// description ("vertices: a b c; edge: a b 4; edge: b c inf"), a JSON
/// object, or "-" to read any of these from stdin.
#[derive(Parser, Debug)]
#[command(name = "coxeter", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized choices (the Coxeter element ordering used by
    /// `essential` when no word is given).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest group order `oracle` will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Components and their spherical/affine/indefinite type.
    Classify { spec: String },
    /// Standard decomposition with Remak and virtual signatures.
    Decompose { spec: String },
    /// Decide whether an element lies in no proper parabolic subgroup.
    Essential {
        spec: String,
        /// Space-separated generator names; defaults to a Coxeter element.
        #[arg(long)]
        word: Option<String>,
        /// Root depth window for the odd-root search.
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Power bound for parity classification.
        #[arg(long)]
        bound: Option<usize>,
        /// Word-length radius of the conjugation search.
        #[arg(long, default_value_t = 8)]
        radius: usize,
    },
    /// Inversion set, length and a reduced word.
    Roots {
        spec: String,
        #[arg(long)]
        word: String,
    },
    /// Periodic/even/odd classification of a root under a word.
    Parity {
        spec: String,
        #[arg(long)]
        word: String,
        /// Comma-separated coordinates in the simple roots.
        #[arg(long)]
        root: String,
        /// Largest power examined before the verdict is unknown.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Non-degenerate extension and its determinant identity.
    Extend { spec: String },
    /// Compare two groups up to isomorphism or commensurability.
    Compare {
        spec1: String,
        spec2: String,
        #[arg(long, value_enum, default_value_t = Mode::Iso)]
        mode: Mode,
    },
    /// Brute-force facts about a finite group.
    Oracle {
        spec: String,
        /// Also search all direct-product decompositions.
        #[arg(long)]
        decompositions: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Iso,
    Comm,
}

fn read_spec(arg: &str) -> Result<CoxeterGraph, CoxeterError> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CoxeterError::Parse {
                position: 0,
                message: format!("cannot read stdin: {e}"),
            })?;
        parse_spec(&text)
    } else {
        parse_spec(arg)
    }
}

fn run(cli: &Cli) -> Result<Report, CoxeterError> {
    match &cli.command {
        Command::Classify { spec } => report::classify_report(&read_spec(spec)?),
        Command::Decompose { spec } => report::decompose_report(&read_spec(spec)?),
        Command::Essential {
            spec,
            word,
            depth,
            bound,
            radius,
        } => {
            let g = read_spec(spec)?;
            let params = EssentialityParams {
                depth: *depth,
                bound: *bound,
                conj_search_radius: *radius,
            };
            let word = match (word, cli.seed) {
                (None, Some(seed)) => {
                    let mut order: Vec<usize> = (0..g.rank()).collect();
                    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                    let w = CoxeterSystem::new(&g).coxeter_element(Some(&order))?;
                    Some(Word::display(&w, &g))
                }
                _ => word.clone(),
            };
            let mut r = report::essential_report(&g, word.as_deref(), &params)?;
            if let Some(seed) = cli.seed {
                r.diagnostics.push(format!("seed = {seed}"));
            }
            Ok(r)
        }
        Command::Roots { spec, word } => report::roots_report(&read_spec(spec)?, word),
        Command::Parity {
            spec,
            word,
            root,
            bound,
        } => report::parity_report(&read_spec(spec)?, word, root, *bound),
        Command::Extend { spec } => report::extend_report(&read_spec(spec)?),
        Command::Compare { spec1, spec2, mode } => {
            let mode = match mode {
                Mode::Iso => CompareMode::Iso,
                Mode::Comm => CompareMode::Comm,
            };
            report::compare_report(&read_spec(spec1)?, &read_spec(spec2)?, mode)
        }
        Command::Oracle {
            spec,
            decompositions,
        } => report::oracle_report(&read_spec(spec)?, cli.max_order, *decompositions),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(r) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&r).expect("report serializes")
            } else {
                r.text()
            };
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let body = json!({"error": {"message": e.to_string(), "exit_code": code}});
                emit(&serde_json::to_string_pretty(&body).expect("error serializes"));
            }
            eprintln!("error: {e}");
            ExitCode::from(code as u8)
        }
    }
}
