//! `ldiip`: parse, evaluate, decide and proof-check formulas from the shell.
//!
//! Exit codes: 0 success, 1 syntax or usage error, 2 invalid model,
//! 3 counter-model found, 4 derivation check failed.

mod demo;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use ldiip_core::concrete::eval_concrete_with;
use ldiip_core::decide::{decide_with, DecideOptions};
use ldiip_core::model::parse_model;
use ldiip_core::proof::{corpus, corpus_entry, parse_derivation, render_derivation};
use ldiip_core::syntax::parse_formula;
use ldiip_core::{
    check_derivation, AxiomCatalog, ConcreteState, ConcreteValuation, Config, Derivation, Formula, Modality, PropName,
    Universe,
};

const EXIT_SYNTAX: u8 = 1;
const EXIT_INVALID_MODEL: u8 = 2;
const EXIT_COUNTER_MODEL: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "ldiip", version, about = "Proof-modality logic: parse, evaluate, decide and check derivations")]
struct Cli {
    /// Agent universe, comma separated [default: a,b]
    #[arg(long, global = true)]
    agents: Option<String>,
    /// key=value configuration file (agents, gamma1, closure, ceiling)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the core syntax tree of a formula
    Parse { formula: String },
    /// Evaluate a formula at a state of a model file or at a concrete state
    Eval {
        formula: String,
        #[arg(long, requires = "state", conflicts_with = "concrete")]
        model: Option<PathBuf>,
        #[arg(long)]
        state: Option<String>,
        /// A concrete state such as `recv(a, m, 0)`
        #[arg(long)]
        concrete: Option<String>,
        /// Propositions true everywhere in the concrete evaluation
        #[arg(long = "true", value_name = "PROP")]
        true_props: Vec<String>,
    },
    /// Decide validity, printing a counter-model if there is one
    Decide {
        formula: String,
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Check a derivation file or a built-in corpus entry
    Check {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["file", "corpus"])]
        list_corpus: bool,
        #[arg(long, conflicts_with = "file")]
        corpus: Option<String>,
        /// Print the derivation in file format instead of checking it
        #[arg(long)]
        print: bool,
    },
    /// Walk through a log signed by the accused agent acting as an epistemic decider
    DemoAccountability {
        /// The agent the log proves things to
        #[arg(long, default_value = "a")]
        agent: String,
        /// Whether the accused behaved correctly
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        correct: bool,
    },
}

/// An error carrying its exit code.
#[derive(Debug)]
struct Fail {
    code: u8,
    message: String,
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Fail {}

fn fail(code: u8, message: impl Into<String>) -> anyhow::Error {
    Fail { code, message: message.into() }.into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_SYNTAX } else { 0 });
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    print!("{out}");
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.downcast_ref::<Fail>().map_or(EXIT_SYNTAX, |f| f.code))
        }
    }
}

fn load_config(cli: &Cli) -> Result<Config> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path).map_err(|e| fail(EXIT_SYNTAX, e.to_string()))?,
        None => Config::default(),
    };
    if let Some(list) = &cli.agents {
        cfg.universe = Universe::from_list(list).map_err(|e| fail(EXIT_SYNTAX, format!("--agents: {e}")))?;
    }
    Ok(cfg)
}

fn formula(text: &str, universe: &Universe) -> Result<Formula> {
    parse_formula(text, universe).map_err(|e| fail(EXIT_SYNTAX, e.to_string()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Runs a command, appending its standard output to `out`, and returns the exit code.
fn run(cli: Cli, out: &mut String) -> Result<u8> {
    use std::fmt::Write;
    let cfg = load_config(&cli)?;
    match cli.command {
        Command::Parse { formula: text } => {
            let f = formula(&text, &cfg.universe)?;
            writeln!(out, "{f:?}")?;
            Ok(0)
        }
        Command::Eval { formula: text, model, state, concrete, true_props } => {
            let f = formula(&text, &cfg.universe)?;
            let value = match (model, concrete) {
                (Some(path), None) => eval_on_model(&cfg, &f, &path, state.as_deref().unwrap_or_default(), out)?,
                (None, Some(text)) => {
                    let s = ConcreteState::parse(&text, Some(&cfg.universe))
                        .map_err(|e| fail(EXIT_SYNTAX, format!("--concrete: {e}")))?;
                    let mut val = ConcreteValuation::new();
                    for p in &true_props {
                        let p = PropName::new(p).map_err(|e| fail(EXIT_SYNTAX, format!("--true: {e}")))?;
                        val = val.constant(p, true);
                    }
                    eval_concrete_with(cfg.closure, &f, &s, &val)
                }
                _ => return Err(fail(EXIT_SYNTAX, "give either --model FILE --state NAME or --concrete STATE")),
            };
            writeln!(out, "{value}")?;
            Ok(0)
        }
        Command::Decide { formula: text, max_states } => {
            let f = formula(&text, &cfg.universe)?;
            let verdict =
                decide_with(&f, max_states, &DecideOptions::from(&cfg)).map_err(|e| fail(EXIT_SYNTAX, e.to_string()))?;
            writeln!(out, "{}", verdict.to_string().trim_end())?;
            Ok(if verdict.is_counter_model() { EXIT_COUNTER_MODEL } else { 0 })
        }
        Command::Check { file, list_corpus, corpus: name, print } => {
            if list_corpus {
                for e in corpus() {
                    writeln!(out, "{}", e.name)?;
                }
                return Ok(0);
            }
            let d = match (file, name) {
                (Some(path), None) => parse_derivation(&read(&path)?, &cfg.universe)
                    .map_err(|e| fail(EXIT_SYNTAX, format!("{}: {e}", path.display())))?,
                (None, Some(name)) => {
                    corpus_entry(&name).ok_or_else(|| fail(EXIT_SYNTAX, format!("no corpus entry `{name}`")))?.derivation
                }
                _ => return Err(fail(EXIT_SYNTAX, "give a derivation FILE, --corpus NAME or --list-corpus")),
            };
            if print {
                out.push_str(&render_derivation(&d, Some(&cfg.universe)));
                return Ok(0);
            }
            check(&cfg, &d, out)
        }
        Command::DemoAccountability { agent, correct } => demo::run(&cfg, &agent, correct, out),
    }
}

fn eval_on_model(cfg: &Config, f: &Formula, path: &Path, state: &str, out: &mut String) -> Result<bool> {
    let m = parse_model(&read(path)?)
        .map_err(|e| fail(EXIT_INVALID_MODEL, format!("{}: {e}", path.display())))?
        .with_closure(cfg.closure);
    let signature: BTreeSet<Modality> = m.modalities().cloned().chain(f.modalities()).collect();
    let report = m.validate_interface(&signature);
    if !report.is_valid() {
        out.push_str(&format!("{report}\n"));
        return Err(fail(EXIT_INVALID_MODEL, format!("{} violates the accessibility interface", path.display())));
    }
    let s = m.state_index(state).map_err(|e| fail(EXIT_SYNTAX, e.to_string()))?;
    m.eval(s, f).map_err(|e| fail(EXIT_INVALID_MODEL, e.to_string()))
}

fn check(cfg: &Config, d: &Derivation, out: &mut String) -> Result<u8> {
    use std::fmt::Write;
    let catalog = AxiomCatalog::new(cfg.gamma1.clone());
    match check_derivation(d, &catalog) {
        Ok(()) => {
            let n = d.lines.len();
            match d.conclusion() {
                Some(c) => writeln!(out, "OK: {n} lines, conclusion {c}")?,
                None => writeln!(out, "OK: empty derivation")?,
            }
            Ok(0)
        }
        Err(e) => {
            let line = &d.lines[e.line - 1];
            writeln!(out, "FAIL at line {}: {}", e.line, e.kind)?;
            writeln!(out, "  {}. {} ; {}", e.line, line.formula, line.justification)?;
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

