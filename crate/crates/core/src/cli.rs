//! Command-line front end.
//!
//! Exit codes: 0 success (provable, member, PASS), 1 negative verdict
//! (unprovable, not a member, FAIL), 2 bad input, 3 internal invariant
//! breach, 4 oracle resource cap hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::forest::{self, approx_equal, expand_solution, interp_unfold, Environment};
use crate::formula::{is_horn_sequent, parse_sequent, Sequent};
use crate::gfp_calc::{alternatives_distinct, synthesize_horn, synthesize_with_stats, validate, FinTerm};
use crate::lambda_bar::{parse_term, typecheck, LambdaBarTerm};
use crate::oracle::bfs_prove;
use crate::search::{enumerate, has_any_member, member, provable};
use crate::Error;

const SIZE_NOTE: &str = "Proof size counts every λ as 1 plus its body and every application as 1 plus the sizes of its arguments, so a variable has size 1 and λf.λx.fⁿ⟨x⟩ has size n+3.";

#[derive(Debug, Parser)]
#[command(name = "coforest", version, about = "Coinductive proof search for implicational intuitionistic logic", after_help = SIZE_NOTE)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the finitary term representing all proofs.
    Solve {
        sequent: String,
        /// Use the one-variable-per-atom construction for Horn sequents.
        #[arg(long)]
        horn: bool,
    },
    /// Decide whether a finite proof exists.
    Prove { sequent: String },
    /// List finite proofs up to a size bound.
    #[command(after_help = SIZE_NOTE)]
    Enumerate {
        sequent: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        limit: Option<usize>,
        /// Use the brute-force prover instead.
        #[arg(long)]
        oracle: bool,
    },
    /// Count finite proofs up to a size bound.
    #[command(after_help = SIZE_NOTE)]
    Count {
        sequent: String,
        #[arg(long)]
        max_size: usize,
        /// Use the brute-force prover instead.
        #[arg(long)]
        oracle: bool,
    },
    /// Unfold the proof forest to a given depth.
    Expand {
        sequent: String,
        #[arg(long)]
        depth: usize,
        /// Also write the approximant as a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print on one line.
        #[arg(long)]
        compact: bool,
    },
    /// Check a candidate proof term.
    Check {
        sequent: String,
        #[arg(long)]
        term: String,
    },
    /// Compare the finitary term with the solution space at every depth.
    Verify {
        sequent: String,
        #[arg(long)]
        depth: usize,
        /// Also compare enumeration with the brute-force prover.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
    },
}

enum Failure {
    Input(String),
    Internal(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Context(_) => Failure::Input(e.to_string()),
            Error::Oracle(_) => Failure::Cap(e.to_string()),
            Error::Synthesis(crate::gfp_calc::SynthesisError::NotHorn) => Failure::Input(e.to_string()),
            Error::Synthesis(_) | Error::Interp(_) => Failure::Internal(e.to_string()),
        }
    }
}

macro_rules! fail {
    ($e:expr) => {
        Failure::from(Error::from($e))
    };
}

type Outcome = Result<i32, Failure>;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            3
        }
        Err(Failure::Cap(m)) => {
            let _ = writeln!(err, "error: {m}");
            4
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Internal(format!("write failed: {e}"))
}

fn sequent(text: &str) -> Result<Sequent, Failure> {
    parse_sequent(text).map_err(|e| fail!(e))
}

fn emit_json(out: &mut dyn Write, mut v: serde_json::Value) -> Result<(), Failure> {
    v.as_object_mut().expect("object").insert("schema".into(), json!(1));
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable")).map_err(io)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Solve { sequent: text, horn } => {
            let s = sequent(text)?;
            let t = if *horn {
                synthesize_horn(&s).map_err(|e| fail!(e))?
            } else {
                synthesize_with_stats(&s).map_err(|e| fail!(e))?.0
            };
            if json {
                emit_json(out, json!({"sequent": s.to_string(), "text": t.to_string(), "term": t}))?;
            } else {
                writeln!(out, "{t}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Prove { sequent: text } => {
            let s = sequent(text)?;
            let yes = provable(&s).map_err(|e| fail!(e))?;
            if json {
                emit_json(out, json!({"sequent": s.to_string(), "provable": yes}))?;
            } else {
                writeln!(out, "{}", if yes { "provable" } else { "unprovable" }).map_err(io)?;
            }
            Ok(if yes { 0 } else { 1 })
        }
        Command::Enumerate {
            sequent: text,
            max_size,
            limit,
            oracle,
        } => {
            let s = sequent(text)?;
            let mut proofs = proofs(&s, *max_size, *oracle)?;
            if let Some(l) = limit {
                proofs.truncate(*l);
            }
            if json {
                let shown: Vec<String> = proofs.iter().map(ToString::to_string).collect();
                emit_json(out, json!({"sequent": s.to_string(), "max_size": max_size, "proofs": shown}))?;
            } else {
                for p in &proofs {
                    writeln!(out, "{p}").map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Count {
            sequent: text,
            max_size,
            oracle,
        } => {
            let s = sequent(text)?;
            let n = proofs(&s, *max_size, *oracle)?.len();
            if json {
                emit_json(out, json!({"sequent": s.to_string(), "max_size": max_size, "count": n}))?;
            } else {
                writeln!(out, "{n}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Expand {
            sequent: text,
            depth,
            dot,
            compact,
        } => {
            let s = sequent(text)?;
            let t = synthesize_with_stats(&s).map_err(|e| fail!(e))?.0;
            let n = interp_unfold(&t, *depth, &Environment::new()).map_err(|e| fail!(e))?;
            if let Some(path) = dot {
                std::fs::write(path, forest::to_dot(&n))
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            if json {
                emit_json(out, json!({"sequent": s.to_string(), "depth": depth, "text": n.to_string(), "forest": n}))?;
            } else if *compact {
                writeln!(out, "{n}").map_err(io)?;
            } else {
                write!(out, "{}", forest::pretty(&n)).map_err(io)?;
            }
            Ok(0)
        }
        Command::Check { sequent: text, term } => {
            let s = sequent(text)?;
            let t = parse_term(term).map_err(|e| fail!(e))?;
            let fin = synthesize_with_stats(&s).map_err(|e| fail!(e))?.0;
            let is_member = member(&s.context, &t, &fin);
            let ty = typecheck(&s.context, &t);
            let well_typed = ty.as_ref() == Some(&s.goal);
            if is_member != well_typed {
                return Err(Failure::Internal(format!(
                    "membership says {is_member} but the type checker says {}",
                    ty.map_or_else(|| "ill-typed".to_string(), |f| f.to_string())
                )));
            }
            if json {
                emit_json(out, json!({"sequent": s.to_string(), "term": t.to_string(), "member": is_member}))?;
            } else {
                writeln!(out, "{}", if is_member { "member" } else { "not a member" }).map_err(io)?;
            }
            Ok(if is_member { 0 } else { 1 })
        }
        Command::Verify {
            sequent: text,
            depth,
            oracle,
            max_size,
        } => {
            let s = sequent(text)?;
            let report = verify(&s, *depth, oracle.then_some(*max_size))?;
            if json {
                let checks: Vec<_> = report
                    .checks
                    .iter()
                    .map(|(name, ok)| json!({"check": name, "ok": ok}))
                    .collect();
                emit_json(out, json!({"sequent": s.to_string(), "checks": checks, "pass": report.pass()}))?;
            } else {
                for (name, ok) in &report.checks {
                    writeln!(out, "{name}: {}", if *ok { "ok" } else { "MISMATCH" }).map_err(io)?;
                }
                writeln!(out, "{}", if report.pass() { "PASS" } else { "FAIL" }).map_err(io)?;
            }
            Ok(if report.pass() { 0 } else { 1 })
        }
    }
}

fn proofs(s: &Sequent, max_size: usize, oracle: bool) -> Result<Vec<LambdaBarTerm>, Failure> {
    if oracle {
        bfs_prove(s, max_size).map_err(|e| fail!(e))
    } else {
        enumerate(s, max_size, None).map_err(|e| fail!(e))
    }
}

struct Report {
    checks: Vec<(String, bool)>,
}

impl Report {
    fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn depth_checks(report: &mut Report, label: &str, s: &Sequent, t: &FinTerm, depth: usize) -> Result<(), Failure> {
    for d in 0..=depth {
        let got = interp_unfold(t, d, &Environment::new()).map_err(|e| fail!(e))?;
        let want = expand_solution(s, d);
        report.checks.push((format!("{label} depth {d}"), approx_equal(&got, &want)));
    }
    Ok(())
}

fn verify(s: &Sequent, depth: usize, oracle: Option<usize>) -> Result<Report, Failure> {
    let mut report = Report { checks: Vec::new() };
    let (t, stats) = synthesize_with_stats(s).map_err(|e| fail!(e))?;
    report.checks.push(("well-formed".into(), validate(&t).is_ok()));
    report.checks.push(("distinct alternatives".into(), alternatives_distinct(&t)));
    report.checks.push((
        format!("accumulator {} within bound {}", stats.accumulator_peak, stats.bound),
        (stats.accumulator_peak as u128) <= stats.bound,
    ));
    depth_checks(&mut report, "gfp", s, &t, depth)?;
    if is_horn_sequent(s) {
        let h = synthesize_horn(s).map_err(|e| fail!(e))?;
        depth_checks(&mut report, "horn", s, &h, depth)?;
    }
    let fin = provable(s).map_err(|e| fail!(e))?;
    report
        .checks
        .push(("provable implies productive".into(), !fin || has_any_member(&t)));
    if let Some(k) = oracle {
        let mut ours: Vec<_> = proofs(s, k, false)?.iter().map(LambdaBarTerm::alpha_key).collect();
        let mut theirs: Vec<_> = proofs(s, k, true)?.iter().map(LambdaBarTerm::alpha_key).collect();
        ours.sort();
        theirs.sort();
        report
            .checks
            .push((format!("oracle agreement up to size {k}"), ours == theirs));
    }
    Ok(report)
}
