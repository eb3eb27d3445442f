//! The accountability walk-through: a log signed by the accused decides,
//! for the agent receiving it, whether the accused behaved correctly.

use std::fmt::Write;

use anyhow::Result;
use ldiip_core::concrete::eval_concrete_with;
use ldiip_core::proof::{is_axiom, AxiomName, Recognized};
use ldiip_core::{AgentName, ConcreteState, ConcreteValuation, Config, Formula, MessageTerm, PropName, Universe};

use crate::{fail, EXIT_SYNTAX};

const ACCUSED: &str = "b";

fn name(s: &str) -> Result<AgentName> {
    AgentName::new(s).map_err(|e| fail(EXIT_SYNTAX, format!("--agent: {e}")))
}

pub fn run(cfg: &Config, agent: &str, correct: bool, out: &mut String) -> Result<u8> {
    let judge = name(agent)?;
    let accused = name(ACCUSED)?;
    let universe = Universe::new(cfg.universe.agents().cloned().chain([judge.clone(), accused.clone()]))?;
    let actions = MessageTerm::pair(MessageTerm::atom(name("act1")?), MessageTerm::atom(name("act2")?));
    let log = MessageTerm::sig(actions, accused.clone());
    let correct_b = PropName::new("Correct_b")?;
    let positive = Formula::proves(log.clone(), judge.clone(), Formula::prop(correct_b.clone()));
    let negative = Formula::proves(log.clone(), judge.clone(), Formula::prop(correct_b.clone()).not());
    let decider = positive.clone().or(negative.clone());

    let role = if judge == accused {
        "self-assessment"
    } else if judge == *universe.first() {
        "accountability"
    } else {
        "auditability"
    };
    writeln!(out, "agents: {}", universe.agents().map(|a| a.as_str()).collect::<Vec<_>>().join(", "))?;
    writeln!(out, "role: {role} ({judge} judges {accused})")?;
    writeln!(out, "log M = {log}")?;
    writeln!(out, "decider formula: {decider}")?;
    match is_axiom(&decider) {
        Some(Recognized::Axiom(AxiomName::NegationCompleteness)) => {
            writeln!(out, "  recognized as a NegationCompleteness instance")?;
            writeln!(out, "  => M is an epistemic decider for Correct_b, for {judge}")?;
        }
        other => writeln!(out, "  not a NegationCompleteness instance ({other:?})")?,
    }

    let val = ConcreteValuation::new().constant(correct_b, correct);
    let start = ConcreteState::Zero;
    let after = start.step_with(cfg.closure, &judge, &log);
    let knows = Formula::knows(judge.clone(), log.clone());
    let at = |f: &Formula, s: &ConcreteState| eval_concrete_with(cfg.closure, f, s, &val);
    writeln!(out, "concrete run from 0 with Correct_b = {correct}:")?;
    writeln!(out, "  {knows} at 0: {}", at(&knows, &start))?;
    writeln!(out, "  oracle step on M: {after}")?;
    writeln!(out, "  {knows} there: {}", at(&knows, &after))?;
    writeln!(out, "  decider formula at 0: {}", at(&decider, &start))?;
    writeln!(out, "  {positive} at 0: {}", at(&positive, &start))?;
    writeln!(out, "  {negative} at 0: {}", at(&negative, &start))?;
    let verdict = match (at(&positive, &start), at(&negative, &start)) {
        (true, false) => "M proves Correct_b (positive decision)",
        (false, true) => "M proves ~Correct_b (negative decision)",
        _ => "M decides nothing",
    };
    writeln!(out, "decision: {verdict}")?;
    Ok(0)
}
