use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use kleenebook::betting::{AnyBook, Verdict};
use kleenebook::kleene::{
    self, check_arity, dnf_formula_for, eval, meaning, parse, Formula, World, MAX_ARITY,
};
use kleenebook::probability::{check_belief_axioms, check_derived_properties, BeliefAssignment};
use kleenebook::synth::synthesize_all;
use kleenebook::verify::{self, SUITES};
use kleenebook::{Error, Result};

/// Partial (three-valued) subjective probability toolkit.
///
/// Formulas use p1..pn, the constants 0, 1 and n, and the connectives
/// ! (not), & (and), | (or). Worlds are strings over T, N, F with p1 first.
///
/// Exit status: 0 success or coherent, 1 violation or Dutch Book found,
/// 2 input error.
#[derive(Parser, Debug)]
#[command(name = "kleenebook", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Number of propositional variables (default: inferred).
    #[arg(long, global = true)]
    arity: Option<usize>,

    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula at one world.
    Eval { formula: String, world: String },
    /// Print the value of a formula at every world.
    Table { formula: String },
    /// Print the meaning of a formula: the worlds where it is T and where it is F.
    Meaning { formula: String },
    /// Decide whether the premises entail the conclusion (last argument).
    Entails {
        #[arg(required = true)]
        formulas: Vec<String>,
    },
    /// Decide whether two formulas are equivalent.
    Equiv { a: String, b: String },
    /// Check a belief file against the axioms.
    Check { file: String },
    /// Build verified Dutch Books against a belief file.
    Synth { file: String },
    /// Decide whether a book file is a (weak) Dutch Book.
    Detect { file: String },
    /// Payoff of a book file at one world, or at every world.
    Payoff { file: String, world: Option<String> },
    /// Run the built-in property suites.
    Verify {
        /// Run only this suite.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Option<String>,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
    },
    /// A classical formula whose classical models are the given worlds.
    Dnf {
        worlds: Vec<String>,
        /// Use the classical models of this formula instead.
        #[arg(long = "of", conflicts_with = "worlds")]
        of: Option<String>,
    },
}

struct Outcome {
    code: u8,
    text: String,
    json: Value,
}

impl Outcome {
    fn new(code: u8, text: String, json: Value) -> Self {
        Outcome { code, text, json }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json")
            } else {
                out.text.trim_end().to_string()
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))
    }
}

/// Parses `texts` at the requested arity, or at the largest variable index
/// used (at least 1) when none is given.
fn parse_all(texts: &[&str], arity: Option<usize>) -> Result<(usize, Vec<Formula>)> {
    if let Some(n) = arity {
        check_arity(n)?;
        let fs = texts.iter().map(|t| parse(t, n)).collect::<Result<_>>()?;
        return Ok((n, fs));
    }
    let fs: Vec<Formula> = texts.iter().map(|t| parse(t, MAX_ARITY)).collect::<Result<_>>()?;
    let n = fs.iter().map(Formula::max_var).max().unwrap_or(0).max(1);
    Ok((n, fs))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Eval { formula, world } => {
            let w: World = world.parse()?;
            let n = cli.arity.unwrap_or(w.arity());
            check_arity(n)?;
            if w.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: w.arity() });
            }
            let f = parse(formula, n)?;
            let v = eval(&f, &w)?;
            Ok(Outcome::new(
                0,
                format!("{v} {}", v.pair()),
                json!({ "formula": f, "world": w.to_string(), "value": v.to_string(), "pair": v.pair() }),
            ))
        }
        Command::Table { formula } => {
            let (n, fs) = parse_all(&[formula], cli.arity)?;
            let mut text = format!("{:<width$}  {}\n", "world", fs[0], width = n.max(5));
            let mut rows = serde_json::Map::new();
            for w in kleene::worlds(n)? {
                let v = eval(&fs[0], &w)?;
                text += &format!("{:<width$}  {v}\n", w.to_string(), width = n.max(5));
                rows.insert(w.to_string(), json!(v.to_string()));
            }
            Ok(Outcome::new(0, text, json!({ "formula": fs[0], "arity": n, "table": rows })))
        }
        Command::Meaning { formula } => {
            let (n, fs) = parse_all(&[formula], cli.arity)?;
            let m = meaning(&fs[0], n)?;
            let labels = |s: &kleenebook::bitset::BitSet| -> Vec<String> {
                s.iter().map(|i| World::from_index(i, n).to_string()).collect()
            };
            Ok(Outcome::new(
                0,
                format!("M({}) = {m}", fs[0]),
                json!({ "formula": fs[0], "arity": n, "true": labels(m.pos()), "false": labels(m.neg()) }),
            ))
        }
        Command::Entails { formulas } => {
            let texts: Vec<&str> = formulas.iter().map(String::as_str).collect();
            let (n, fs) = parse_all(&texts, cli.arity)?;
            let (premises, conclusion) = fs.split_at(fs.len() - 1);
            let conclusion = &conclusion[0];
            let counter = kleene::worlds(n)?.find(|w| {
                let inf = premises
                    .iter()
                    .map(|p| eval(p, w).expect("checked arity"))
                    .min()
                    .unwrap_or(kleene::TruthValue::T);
                inf > eval(conclusion, w).expect("checked arity")
            });
            debug_assert_eq!(counter.is_none(), kleene::entails(premises, conclusion, n)?);
            let text = match &counter {
                None => "entails".to_string(),
                Some(w) => format!("does not entail (counterexample {w})"),
            };
            Ok(Outcome::new(
                u8::from(counter.is_some()),
                text,
                json!({ "entails": counter.is_none(), "counterexample": counter.map(|w| w.to_string()) }),
            ))
        }
        Command::Equiv { a, b } => {
            let (n, fs) = parse_all(&[a, b], cli.arity)?;
            let diff = kleene::worlds(n)?
                .map(|w| {
                    let (x, y) = (eval(&fs[0], &w), eval(&fs[1], &w));
                    (w, x, y)
                })
                .find(|(_, x, y)| x != y);
            let (code, text, witness) = match diff {
                None => (0, "equivalent".to_string(), Value::Null),
                Some((w, x, y)) => {
                    let (x, y) = (x?, y?);
                    (1, format!("not equivalent: at {w} the values are {x} and {y}"), json!(w.to_string()))
                }
            };
            Ok(Outcome::new(code, text, json!({ "equivalent": code == 0, "witness": witness })))
        }
        Command::Check { file } => {
            let b = load_beliefs(&read_input(file)?, cli.arity)?;
            let report = check_belief_axioms(&b)?;
            let derived = check_derived_properties(&b)?;
            let mut text = String::new();
            for v in report.violations.iter().chain(&derived) {
                text += &format!("violation  {}\n", v.describe());
            }
            for u in &report.unchecked {
                let missing: Vec<String> = u.missing.iter().map(|f| f.to_string()).collect();
                text += &format!("unchecked  {}: missing {}\n", u.kind.label(), missing.join(", "));
            }
            let bad = !report.violations.is_empty() || !derived.is_empty();
            if !bad {
                text += "coherent on all checked instances\n";
            }
            Ok(Outcome::new(
                u8::from(bad),
                text,
                json!({ "violations": report.violations, "derived": derived, "unchecked": report.unchecked }),
            ))
        }
        Command::Synth { file } => {
            let b = load_beliefs(&read_input(file)?, cli.arity)?;
            let r = synthesize_all(&b)?;
            let mut text = String::new();
            for c in &r.certificates {
                text += &format!(
                    "{} [{}] on {}: {}",
                    c.violation.kind,
                    c.construction,
                    c.violation.formulas.join(", "),
                    c.verdict
                );
                if let Some(kleenebook::synth::Payoff::Pair(p)) = c.constant_payoff {
                    text += &format!(", constant payoff {p}");
                }
                text += "\n";
                if let AnyBook::Partial(bk) = &c.book {
                    for bet in bk.bets() {
                        text += &format!("    bet {} at {} stake {}\n", bet.formula, bet.quotient, bet.stake);
                    }
                }
            }
            for u in &r.unsynthesized {
                text += &format!("unsynthesized  {} ({})\n", u.violation.describe(), u.reason);
            }
            if r.is_clean() {
                text += "no Dutch Book: no violations found\n";
            }
            Ok(Outcome::new(u8::from(!r.is_clean()), text, serde_json::to_value(&r).expect("json")))
        }
        Command::Detect { file } => {
            let book = AnyBook::from_json(&read_input(file)?)?;
            let d = book.detect()?;
            let mut text = d.verdict.to_string();
            if let Some(w) = &d.witness {
                text += &format!(" (witness {w})");
            }
            if d.empty_book {
                text += " (empty book)";
            }
            let code = u8::from(d.verdict.at_least(Verdict::WeakDutchBook));
            Ok(Outcome::new(code, text, serde_json::to_value(&d).expect("json")))
        }
        Command::Payoff { file, world } => {
            let book = AnyBook::from_json(&read_input(file)?)?;
            let ws: Vec<World> = match world {
                Some(w) => vec![w.parse()?],
                None => match &book {
                    AnyBook::Partial(b) => kleene::worlds(b.arity())?.collect(),
                    AnyBook::Classical(b) => kleene::classical_worlds(b.arity())?.collect(),
                },
            };
            let mut text = String::new();
            let mut rows = serde_json::Map::new();
            for w in ws {
                if w.arity() != book.arity() {
                    return Err(Error::ArityMismatch { expected: book.arity(), found: w.arity() });
                }
                let (shown, value) = match &book {
                    AnyBook::Partial(b) => {
                        let p = b.payoff(&w)?;
                        (format!("{p}  {}", kleenebook::betting::classify(p)), json!(p))
                    }
                    AnyBook::Classical(b) => {
                        let p = b.payoff(&w)?;
                        (kleenebook::value::fmt_real(p), json!(p))
                    }
                };
                text += &format!("{w}  {shown}\n");
                rows.insert(w.to_string(), value);
            }
            Ok(Outcome::new(0, text, Value::Object(rows)))
        }
        Command::Verify { suite, iterations } => {
            let n = cli.arity.unwrap_or(2);
            let reports = match suite {
                Some(s) => vec![verify::run_suite(s, n, cli.seed, *iterations)?],
                None => verify::run_all(n, cli.seed, *iterations)?,
            };
            let ok = reports.iter().all(|r| r.passed());
            let text = reports.iter().map(|r| format!("{r}\n")).collect();
            Ok(Outcome::new(
                u8::from(!ok),
                text,
                json!({ "arity": n, "seed": cli.seed, "iterations": iterations, "suites": reports }),
            ))
        }
        Command::Dnf { worlds, of } => {
            let (n, models) = match of {
                Some(text) => {
                    let (n, fs) = parse_all(&[text], cli.arity)?;
                    let ms = kleene::classical_worlds(n)?
                        .filter(|w| eval(&fs[0], w).map(|v| v == kleene::TruthValue::T).unwrap_or(false))
                        .collect::<Vec<_>>();
                    (n, ms)
                }
                None => {
                    let ws = worlds.iter().map(|w| w.parse()).collect::<Result<Vec<World>>>()?;
                    let n = cli.arity.or(ws.first().map(World::arity)).unwrap_or(1);
                    (n, ws)
                }
            };
            let f = dnf_formula_for(&models, n)?;
            Ok(Outcome::new(0, f.to_string(), json!({ "arity": n, "formula": f })))
        }
    }
}

fn load_beliefs(text: &str, arity: Option<usize>) -> Result<BeliefAssignment> {
    let b = BeliefAssignment::from_json(text)?;
    check_arity(b.arity())?;
    if let Some(n) = arity {
        if n != b.arity() {
            return Err(Error::ArityMismatch { expected: n, found: b.arity() });
        }
    }
    Ok(b)
}
