//! Validity checking with counter-models.
//!
//! Bounded questions are answered by enumerating interface-valid models
//! fewest states first, so a counter-model is the first in enumeration
//! order. Unbounded questions are settled by type elimination, which is
//! exhaustive; when it finds a small model the enumeration is rerun up to
//! that size so the reported witness is again the first in order.

mod compile;
mod elimination;

use std::fmt;

use thiserror::Error;

use crate::config::Config;
use crate::knowledge::Closure;
use crate::model::program::Program;
use crate::model::{render_model, search, FiniteModel, SearchSpace};
use crate::syntax::{Formula, Universe};

pub use compile::{compile_singleton, decide_via_compilation, CompiledVerdict};
pub use elimination::MAX_TYPES;

/// Largest model size for which the enumeration reruns to minimize a
/// witness found by elimination.
const MINIMIZE_UP_TO: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// No counter-model with at most this many states.
    ValidUpTo(usize),
    CounterModel { model: FiniteModel, state: usize },
}

impl Verdict {
    pub fn is_counter_model(&self) -> bool {
        matches!(self, Verdict::CounterModel { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("Valid"),
            Verdict::ValidUpTo(n) => write!(f, "ValidUpTo({n})"),
            Verdict::CounterModel { model, state } => {
                write!(f, "CounterModel at {}\n{}", model.state_name(*state), render_model(model))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(
        "exhaustive bound 2^{closure_size} exceeds the ceiling {ceiling}; pass a state bound or raise the ceiling"
    )]
    CeilingExceeded { closure_size: usize, ceiling: u64 },
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("the universe is not a single agent")]
    NotSingleton,
    #[error("internal error: witness failed re-checking: {0}")]
    UnsoundWitness(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub closure: Closure,
    /// Largest exhaustive bound accepted without an explicit state bound.
    pub ceiling: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { closure: Closure::DataMining, ceiling: 1 << 16 }
    }
}

impl From<&Config> for DecideOptions {
    fn from(c: &Config) -> Self {
        DecideOptions { closure: c.closure, ceiling: c.ceiling }
    }
}

fn prepare(f: &Formula, closure: Closure) -> Result<(Program, usize, SearchSpace), DecideError> {
    let (prog, root) = Program::compile(f);
    let space = SearchSpace::for_program(&prog, closure).map_err(|e| DecideError::TooLarge(e.0))?;
    Ok((prog, root, space))
}

/// Re-checks a witness: interface-valid over `f`'s signature and `f` true at `state`.
fn verified(f: &Formula, model: FiniteModel, state: usize) -> Result<(FiniteModel, usize), DecideError> {
    let report = model.validate_interface(&f.modalities());
    if !report.is_valid() {
        return Err(DecideError::UnsoundWitness(report.to_string()));
    }
    match model.eval(state, f) {
        Ok(true) => Ok((model, state)),
        Ok(false) => Err(DecideError::UnsoundWitness(format!("{f} is false at {}", model.state_name(state)))),
        Err(e) => Err(DecideError::UnsoundWitness(e.to_string())),
    }
}

/// The first enumerated model with at most `max_states` states, and its
/// lowest state, where `f` holds.
pub fn satisfiable(f: &Formula, max_states: usize) -> Result<Option<(FiniteModel, usize)>, DecideError> {
    satisfiable_with(f, max_states, &DecideOptions::default())
}

pub fn satisfiable_with(
    f: &Formula,
    max_states: usize,
    opts: &DecideOptions,
) -> Result<Option<(FiniteModel, usize)>, DecideError> {
    let (prog, root, space) = prepare(f, opts.closure)?;
    search(&space, &prog, root, max_states).map(|found| verified(f, found.model, found.state)).transpose()
}

/// Some model of `f`, of any size, or `None` if there is none.
pub fn satisfiable_unbounded(f: &Formula, opts: &DecideOptions) -> Result<Option<(FiniteModel, usize)>, DecideError> {
    satisfiable_within(f, None, opts)
}

// Elimination first. If it finds a model of `r` states, the enumeration
// only needs to run up to `r` (or the caller's bound if smaller) to find
// the first model in order.
fn satisfiable_within(
    f: &Formula,
    bound: Option<usize>,
    opts: &DecideOptions,
) -> Result<Option<(FiniteModel, usize)>, DecideError> {
    let (prog, root, space) = prepare(f, opts.closure)?;
    let Some(found) = elimination::eliminate(&space, &prog, root).map_err(DecideError::TooLarge)? else {
        return Ok(None);
    };
    let r = found.model.len();
    match bound {
        Some(k) if k < r => search(&space, &prog, root, k).map(|s| verified(f, s.model, s.state)).transpose(),
        _ if r <= MINIMIZE_UP_TO => {
            let small = search(&space, &prog, root, r).expect("a model of this size exists");
            verified(f, small.model, small.state).map(Some)
        }
        _ => verified(f, found.model, found.state).map(Some),
    }
}

/// Size of the exhaustive bound's exponent: `|subformula_closure(~f)|`.
pub fn closure_size(f: &Formula) -> usize {
    f.clone().not().subformula_closure().len()
}

fn bound_of(closure_size: usize) -> Option<u64> {
    1u64.checked_shl(closure_size as u32)
}

pub fn decide(f: &Formula, max_states: Option<usize>) -> Result<Verdict, DecideError> {
    decide_with(f, max_states, &DecideOptions::default())
}

/// Looks for a model of `~f`. With a state bound, "no counter-model" is
/// `Valid` only if the bound reaches `2^|closure(~f)|`, and `ValidUpTo`
/// otherwise. Without one, refuses if `2^|closure(~f)|` exceeds the ceiling.
pub fn decide_with(f: &Formula, max_states: Option<usize>, opts: &DecideOptions) -> Result<Verdict, DecideError> {
    let n = closure_size(f);
    let exhaustive = match max_states {
        None => {
            if bound_of(n).is_none_or(|b| b > opts.ceiling) {
                return Err(DecideError::CeilingExceeded { closure_size: n, ceiling: opts.ceiling });
            }
            true
        }
        Some(k) => bound_of(n).is_some_and(|b| k as u64 >= b),
    };
    Ok(match satisfiable_within(&f.clone().not(), max_states, opts)? {
        Some((model, state)) => Verdict::CounterModel { model, state },
        None if exhaustive => Verdict::Valid,
        None => Verdict::ValidUpTo(max_states.expect("bounded")),
    })
}

pub(crate) fn check_singleton(universe: &Universe, f: &Formula) -> Result<(), DecideError> {
    if !universe.is_singleton() || f.agents().iter().any(|a| !universe.contains(a)) {
        return Err(DecideError::NotSingleton);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, PropName};

    fn parse(s: &str) -> Formula {
        parse_formula(s, &Universe::default()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(decide(&parse("true"), None).unwrap(), Verdict::Valid);
        assert_eq!(decide(&parse("a knows m -> (([m]a P) -> P)"), Some(4)).unwrap(), Verdict::ValidUpTo(4));
        assert!(decide(&parse("([m]a P) -> [(m, n)]a P"), Some(4)).unwrap().is_counter_model());
        assert!(decide(&parse("a knows m"), Some(4)).unwrap().is_counter_model());
        assert_eq!(decide(&parse("([m]a P) | [m]a ~P"), None).unwrap(), Verdict::Valid);
    }

    #[test]
    fn truthfulness_counter_model() {
        let Verdict::CounterModel { model, state } = decide(&parse("([m]a P) -> P"), Some(4)).unwrap() else {
            panic!("expected a counter-model")
        };
        assert_eq!(model.len(), 2);
        assert_eq!(state, 0);
        let mo = crate::syntax::build::modality(crate::syntax::build::atom("m"), "a");
        assert_eq!(model.successors(&mo, 0).unwrap(), &[1]);
        let (_, ps) = model.props().find(|(p, _)| p.as_str() == "P").unwrap();
        assert_eq!(ps.iter().copied().collect::<Vec<_>>(), vec![1]);
        let a = crate::syntax::build::agent("a");
        assert!(model.base(&a, 0).is_empty());
        assert!(model.base(&a, 1).contains(&crate::syntax::build::atom("m")));
    }

    #[test]
    fn satisfiable_examples() {
        let (m, s) = satisfiable(&parse("P"), 1).unwrap().unwrap();
        assert_eq!((m.len(), s), (1, 0));
        assert!(m.props().any(|(p, set)| *p == PropName::new("P").unwrap() && set.contains(&0)));
        assert_eq!(satisfiable(&parse("~(([m]a P) | [m]a ~P)"), 4).unwrap(), None);
        assert_eq!(satisfiable(&parse("P & ~P"), 4).unwrap(), None);
    }

    #[test]
    fn ceiling_is_enforced() {
        let opts = DecideOptions { ceiling: 4, ..DecideOptions::default() };
        let err = decide_with(&parse("P -> P"), None, &opts).unwrap_err();
        assert!(matches!(err, DecideError::CeilingExceeded { .. }));
    }

    #[test]
    fn exhaustive_bound_gives_a_definitive_verdict() {
        // closure(~P) = {~P, P}: a bound of 4 is exhaustive.
        assert!(decide(&parse("P"), Some(4)).unwrap().is_counter_model());
        // closure(~(P | ~P)) has 6 members.
        assert_eq!(decide(&parse("P | ~P"), Some(64)).unwrap(), Verdict::Valid);
        assert_eq!(decide(&parse("P | ~P"), Some(3)).unwrap(), Verdict::ValidUpTo(3));
    }

    #[test]
    fn elimination_finds_models_needing_several_states() {
        // P false here, true after m, false again after n from there.
        let f = parse("~P & ([m]a P) & [m]a [n]a ~P");
        let (m, s) = satisfiable_unbounded(&f, &DecideOptions::default()).unwrap().unwrap();
        assert!(m.eval(s, &f).unwrap());
        assert!(m.len() >= 3);
    }
}
