//! The concrete state space `0 | recv(a, M, s)`, the oracle step and an
//! evaluator that follows the unique successor of each proof modality.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::interface::{InterfaceReport, Property};
use crate::knowledge::{Closure, DataBase};
use crate::syntax::{AgentName, Formula, MessageTerm, Modality, Parser, PropName, SyntaxError, Tok, Universe};

/// A history of oracle inputs. Equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConcreteState {
    Zero,
    Recv(AgentName, MessageTerm, Arc<ConcreteState>),
}

impl ConcreteState {
    pub fn recv(agent: AgentName, msg: MessageTerm, prev: ConcreteState) -> Self {
        ConcreteState::Recv(agent, msg, Arc::new(prev))
    }

    /// Number of `recv` layers.
    pub fn depth(&self) -> usize {
        let mut n = 0;
        let mut s = self;
        while let ConcreteState::Recv(_, _, prev) = s {
            n += 1;
            s = prev;
        }
        n
    }

    /// Raw data received by `agent` so far.
    pub fn msgs(&self, agent: &AgentName) -> DataBase {
        let mut out = DataBase::new();
        let mut s = self;
        while let ConcreteState::Recv(b, m, prev) = s {
            if b == agent {
                out.insert(m.clone());
            }
            s = prev;
        }
        out
    }

    pub fn knows(&self, closure: Closure, agent: &AgentName, msg: &MessageTerm) -> bool {
        closure.derivable(agent, &self.msgs(agent), msg)
    }

    /// The oracle step: stay if `msg` is already derivable, otherwise receive it.
    pub fn step_with(&self, closure: Closure, agent: &AgentName, msg: &MessageTerm) -> ConcreteState {
        if self.knows(closure, agent, msg) {
            self.clone()
        } else {
            ConcreteState::recv(agent.clone(), msg.clone(), self.clone())
        }
    }

    pub fn step(&self, agent: &AgentName, msg: &MessageTerm) -> ConcreteState {
        self.step_with(Closure::DataMining, agent, msg)
    }

    pub fn parse(text: &str, universe: Option<&Universe>) -> Result<Self, SyntaxError> {
        let mut p = Parser::new(text, universe)?;
        let s = parse_state(&mut p)?;
        p.expect_end()?;
        Ok(s)
    }
}

fn parse_state(p: &mut Parser<'_>) -> Result<ConcreteState, SyntaxError> {
    if p.eat(&Tok::Zero) {
        return Ok(ConcreteState::Zero);
    }
    if !p.eat(&Tok::Recv) {
        return p.error("`0` or `recv`");
    }
    p.expect(&Tok::LParen, "`(`")?;
    let agent = p.agent()?;
    p.expect(&Tok::Comma, "`,`")?;
    let msg = p.message()?;
    p.expect(&Tok::Comma, "`,`")?;
    let prev = parse_state(p)?;
    p.expect(&Tok::RParen, "`)`")?;
    Ok(ConcreteState::recv(agent, msg, prev))
}

impl fmt::Display for ConcreteState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcreteState::Zero => f.write_str("0"),
            ConcreteState::Recv(a, m, prev) => write!(f, "recv({a}, {m}, {prev})"),
        }
    }
}

impl fmt::Debug for ConcreteState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn msgs(agent: &AgentName, s: &ConcreteState) -> DataBase {
    s.msgs(agent)
}

pub fn step(agent: &AgentName, msg: &MessageTerm, s: &ConcreteState) -> ConcreteState {
    s.step(agent, msg)
}

pub fn accessible(agent: &AgentName, msg: &MessageTerm, s: &ConcreteState, t: &ConcreteState) -> bool {
    *t == s.step(agent, msg)
}

type StatePredicate = Arc<dyn Fn(&ConcreteState) -> bool + Send + Sync>;

/// Truth of ordinary propositions on concrete states. Unassigned
/// propositions are false everywhere.
#[derive(Clone, Default)]
pub struct ConcreteValuation {
    preds: BTreeMap<PropName, StatePredicate>,
}

impl ConcreteValuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn assign(mut self, prop: PropName, pred: impl Fn(&ConcreteState) -> bool + Send + Sync + 'static) -> Self {
        self.preds.insert(prop, Arc::new(pred));
        self
    }

    pub fn constant(self, prop: PropName, value: bool) -> Self {
        self.assign(prop, move |_| value)
    }

    pub fn holds(&self, prop: &PropName, s: &ConcreteState) -> bool {
        self.preds.get(prop).is_some_and(|p| p(s))
    }
}

impl fmt::Debug for ConcreteValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.preds.keys()).finish()
    }
}

pub fn eval_concrete(f: &Formula, s: &ConcreteState, val: &ConcreteValuation) -> bool {
    eval_concrete_with(Closure::DataMining, f, s, val)
}

pub fn eval_concrete_with(closure: Closure, f: &Formula, s: &ConcreteState, val: &ConcreteValuation) -> bool {
    match f {
        Formula::Prop(p) => val.holds(p, s),
        Formula::Knows(a, m) => s.knows(closure, a, m),
        Formula::Not(x) => !eval_concrete_with(closure, x, s, val),
        Formula::And(l, r) => eval_concrete_with(closure, l, s, val) && eval_concrete_with(closure, r, s, val),
        Formula::Proves(m, a, body) => eval_concrete_with(closure, body, &s.step_with(closure, a, m), val),
    }
}

/// Every state with at most `depth` layers over the given agents and alphabet,
/// shallowest first.
pub fn states_up_to(depth: usize, agents: &[AgentName], alphabet: &[MessageTerm]) -> Vec<ConcreteState> {
    let mut all = vec![ConcreteState::Zero];
    let mut layer = vec![ConcreteState::Zero];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * agents.len() * alphabet.len());
        for s in &layer {
            for a in agents {
                for m in alphabet {
                    next.push(ConcreteState::recv(a.clone(), m.clone(), s.clone()));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Checks the four accessibility properties of the oracle step for every
/// state of depth at most `depth` and every (message, agent) pair.
///
/// Successors are searched among all states of depth at most `depth + 1`,
/// which contains every possible step target.
pub fn check_concrete_interface(
    depth: usize,
    agents: &[AgentName],
    alphabet: &[MessageTerm],
    closure: Closure,
) -> InterfaceReport {
    let sources = states_up_to(depth, agents, alphabet);
    let targets = states_up_to(depth + 1, agents, alphabet);
    // Only targets hashing like the step result can be accessible.
    let mut buckets: HashMap<&ConcreteState, Vec<usize>> = HashMap::new();
    for (i, t) in targets.iter().enumerate() {
        buckets.entry(t).or_default().push(i);
    }
    let mut report = InterfaceReport::default();
    for a in agents {
        for m in alphabet {
            let modality = Modality::new(m.clone(), a.clone());
            for s in &sources {
                report.checked += 1;
                let succ: Vec<&ConcreteState> = buckets
                    .get(&s.step_with(closure, a, m))
                    .map(|ix| ix.iter().map(|&i| &targets[i]).filter(|t| accessible_with(closure, a, m, s, t)).collect())
                    .unwrap_or_default();
                if succ.is_empty() {
                    report.push(Property::Seriality, &modality, s.to_string(), "no successor".into());
                }
                let unique: HashSet<&ConcreteState> = succ.iter().copied().collect();
                if unique.len() > 1 {
                    report.push(Property::Functionality, &modality, s.to_string(), format!("{} successors", unique.len()));
                }
                if s.knows(closure, a, m) && !accessible_with(closure, a, m, s, s) {
                    report.push(
                        Property::ConditionalReflexivity,
                        &modality,
                        s.to_string(),
                        "message derivable but state is not its own successor".into(),
                    );
                }
                for t in &succ {
                    if !t.knows(closure, a, m) {
                        report.push(Property::EpistemicImage, &modality, s.to_string(), format!("{a} cannot derive {m} at {t}"));
                    }
                }
            }
        }
    }
    report
}

fn accessible_with(closure: Closure, a: &AgentName, m: &MessageTerm, s: &ConcreteState, t: &ConcreteState) -> bool {
    *t == s.step_with(closure, a, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::build::*;

    fn recv(a: &str, m: MessageTerm, s: ConcreteState) -> ConcreteState {
        ConcreteState::recv(agent(a), m, s)
    }

    #[test]
    fn raw_data_extraction() {
        let a = agent("a");
        assert!(msgs(&a, &ConcreteState::Zero).is_empty());
        assert_eq!(msgs(&a, &recv("a", atom("m"), ConcreteState::Zero)), [atom("m")].into_iter().collect());
        assert!(msgs(&a, &recv("b", atom("m"), ConcreteState::Zero)).is_empty());
    }

    #[test]
    fn oracle_step() {
        let a = agent("a");
        let zero = ConcreteState::Zero;
        assert_eq!(step(&a, &atom("a"), &zero), zero);
        let once = recv("a", atom("m"), zero.clone());
        assert_eq!(step(&a, &atom("m"), &zero), once);
        assert_eq!(step(&a, &atom("m"), &once), once);
        assert!(accessible(&a, &atom("a"), &zero, &zero));
        assert!(accessible(&a, &atom("m"), &zero, &once));
        assert!(!accessible(&a, &atom("m"), &zero, &recv("b", atom("m"), zero.clone())));
    }

    #[test]
    fn evaluator_examples() {
        let val = ConcreteValuation::new();
        let zero = ConcreteState::Zero;
        let sk = proves(atom("m"), "a", knows("a", atom("m")));
        let pc = proves(atom("m"), "a", Formula::falsity(&agent("a"))).not();
        for s in [zero.clone(), recv("b", sig(atom("m"), "b"), zero.clone())] {
            assert!(eval_concrete(&sk, &s, &val));
            assert!(eval_concrete(&pc, &s, &val));
        }
        assert!(!eval_concrete(&knows("a", atom("b")), &zero, &val));
    }

    #[test]
    fn text_round_trip() {
        let s = recv("a", pair(atom("m"), atom("n")), recv("b", sig(atom("k"), "b"), ConcreteState::Zero));
        let text = s.to_string();
        assert_eq!(text, "recv(a, (m, n), recv(b, sig(k, b), 0))");
        assert_eq!(ConcreteState::parse(&text, None).unwrap(), s);
        assert!(ConcreteState::parse("recv(z, m, 0)", Some(&Universe::default())).is_err());
        assert!(ConcreteState::parse("recv(a, m)", None).is_err());
    }

    #[test]
    fn interface_holds_on_small_spaces() {
        let agents = [agent("a")];
        let r = check_concrete_interface(0, &agents, &[atom("a")], Closure::DataMining);
        assert!(r.is_valid(), "{r}");
        let agents = [agent("a"), agent("b")];
        let alphabet = [atom("a"), atom("b"), pair(atom("a"), atom("b"))];
        let r = check_concrete_interface(2, &agents, &alphabet, Closure::DataMining);
        assert!(r.is_valid(), "{r}");
        assert_eq!(r.checked, 6 * (1 + 6 + 36));
        let r = check_concrete_interface(2, &agents, &alphabet, Closure::Identity);
        assert!(r.is_valid(), "{r}");
    }

    #[test]
    fn states_are_counted_by_layer() {
        let agents = [agent("a"), agent("b")];
        let alphabet = [atom("m"), atom("n")];
        assert_eq!(states_up_to(2, &agents, &alphabet).len(), 1 + 4 + 16);
    }
}
