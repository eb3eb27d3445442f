//! Compiling proof modalities inward when there is a single agent.
//!
//! Each modality is pushed through `~` and `&`, and an immediately nested
//! modality with the same message collapses into one. A modality ends up
//! directly above an atom, a knowledge atom or a modality with a different
//! message.

use super::{check_singleton, decide_with, DecideError, DecideOptions, Verdict};
use crate::model::FiniteModel;
use crate::syntax::{AgentName, Formula, MessageTerm, Universe};

// Distributes `[m]a` over an already normalized body.
fn wrap(m: &MessageTerm, a: &AgentName, body: Formula) -> Formula {
    match body {
        Formula::Not(x) => wrap(m, a, *x).not(),
        Formula::And(l, r) => wrap(m, a, *l).and(wrap(m, a, *r)),
        Formula::Proves(ref m2, ref a2, _) if m2 == m && a2 == a => body,
        other => Formula::proves(m.clone(), a.clone(), other),
    }
}

fn normalize(f: &Formula) -> Formula {
    match f {
        Formula::Prop(_) | Formula::Knows(..) => f.clone(),
        Formula::Not(x) => normalize(x).not(),
        Formula::And(l, r) => normalize(l).and(normalize(r)),
        Formula::Proves(m, a, body) => wrap(m, a, normalize(body)),
    }
}

/// Errors unless `universe` has exactly one agent and `f` mentions no other.
pub fn compile_singleton(f: &Formula, universe: &Universe) -> Result<Formula, DecideError> {
    check_singleton(universe, f)?;
    Ok(normalize(f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompiledVerdict {
    Valid,
    CounterModel { model: FiniteModel, state: usize },
}

impl From<CompiledVerdict> for Verdict {
    fn from(v: CompiledVerdict) -> Verdict {
        match v {
            CompiledVerdict::Valid => Verdict::Valid,
            CompiledVerdict::CounterModel { model, state } => Verdict::CounterModel { model, state },
        }
    }
}

/// Decides the compiled form outright. A counter-model of the compiled
/// formula is re-checked against `f` itself.
pub fn decide_via_compilation(
    f: &Formula,
    universe: &Universe,
    opts: &DecideOptions,
) -> Result<CompiledVerdict, DecideError> {
    let compiled = compile_singleton(f, universe)?;
    match decide_with(&compiled, None, opts)? {
        Verdict::CounterModel { model, state } => {
            if model.eval(state, f) != Ok(false) {
                return Err(DecideError::UnsoundWitness(format!("compiled counter-model does not refute {f}")));
            }
            Ok(CompiledVerdict::CounterModel { model, state })
        }
        _ => Ok(CompiledVerdict::Valid),
    }
}
