//! Formula skeletons over sorted metavariables, and first-order matching.

use std::collections::BTreeMap;
use std::fmt;

use super::{AgentName, Formula, MessageTerm, PropName};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AgentPat {
    Var(String),
    Name(AgentName),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MessagePat {
    Var(String),
    /// The atom naming whatever agent the agent metavariable is bound to.
    AgentAtom(String),
    Atom(AgentName),
    Pair(Box<MessagePat>, Box<MessagePat>),
    Sig(Box<MessagePat>, AgentPat),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    Var(String),
    Prop(PropName),
    Knows(AgentPat, MessagePat),
    Not(Box<Pattern>),
    And(Box<Pattern>, Box<Pattern>),
    Proves(MessagePat, AgentPat, Box<Pattern>),
}

/// Bindings for the three metavariable sorts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub formulas: BTreeMap<String, Formula>,
    pub messages: BTreeMap<String, MessageTerm>,
    pub agents: BTreeMap<String, AgentName>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn formula(mut self, var: &str, f: Formula) -> Self {
        self.formulas.insert(var.to_string(), f);
        self
    }

    pub fn message(mut self, var: &str, m: MessageTerm) -> Self {
        self.messages.insert(var.to_string(), m);
        self
    }

    pub fn agent(mut self, var: &str, a: AgentName) -> Self {
        self.agents.insert(var.to_string(), a);
        self
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, v) in &self.formulas {
            parts.push(format!("{k} ↦ {v}"));
        }
        for (k, v) in &self.messages {
            parts.push(format!("{k} ↦ {v}"));
        }
        for (k, v) in &self.agents {
            parts.push(format!("{k} ↦ {v}"));
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl AgentPat {
    pub fn var(name: &str) -> Self {
        AgentPat::Var(name.to_string())
    }

    fn instantiate(&self, sub: &Substitution) -> Option<AgentName> {
        match self {
            AgentPat::Var(v) => sub.agents.get(v).cloned(),
            AgentPat::Name(a) => Some(a.clone()),
        }
    }

    fn matches(&self, a: &AgentName, sub: &mut Substitution) -> bool {
        match self {
            AgentPat::Name(b) => a == b,
            AgentPat::Var(v) => bind(&mut sub.agents, v, a),
        }
    }
}

impl MessagePat {
    pub fn var(name: &str) -> Self {
        MessagePat::Var(name.to_string())
    }

    pub fn instantiate(&self, sub: &Substitution) -> Option<MessageTerm> {
        Some(match self {
            MessagePat::Var(v) => sub.messages.get(v)?.clone(),
            MessagePat::AgentAtom(v) => MessageTerm::Atom(sub.agents.get(v)?.clone()),
            MessagePat::Atom(a) => MessageTerm::Atom(a.clone()),
            MessagePat::Pair(l, r) => MessageTerm::pair(l.instantiate(sub)?, r.instantiate(sub)?),
            MessagePat::Sig(body, signer) => MessageTerm::sig(body.instantiate(sub)?, signer.instantiate(sub)?),
        })
    }

    fn from_term(m: &MessageTerm) -> Self {
        match m {
            MessageTerm::Atom(a) => MessagePat::Atom(a.clone()),
            MessageTerm::Pair(l, r) => MessagePat::Pair(Box::new(Self::from_term(l)), Box::new(Self::from_term(r))),
            MessageTerm::Sig(b, s) => MessagePat::Sig(Box::new(Self::from_term(b)), AgentPat::Name(s.clone())),
        }
    }

    fn matches(&self, m: &MessageTerm, sub: &mut Substitution) -> bool {
        match (self, m) {
            (MessagePat::Var(v), _) => bind(&mut sub.messages, v, m),
            (MessagePat::AgentAtom(v), MessageTerm::Atom(a)) => bind(&mut sub.agents, v, a),
            (MessagePat::Atom(b), MessageTerm::Atom(a)) => a == b,
            (MessagePat::Pair(pl, pr), MessageTerm::Pair(l, r)) => pl.matches(l, sub) && pr.matches(r, sub),
            (MessagePat::Sig(pb, ps), MessageTerm::Sig(b, s)) => pb.matches(b, sub) && ps.matches(s, sub),
            _ => false,
        }
    }
}

fn bind<T: Clone + PartialEq>(map: &mut BTreeMap<String, T>, var: &str, value: &T) -> bool {
    match map.get(var) {
        Some(bound) => bound == value,
        None => {
            map.insert(var.to_string(), value.clone());
            true
        }
    }
}

impl Pattern {
    pub fn var(name: &str) -> Self {
        Pattern::Var(name.to_string())
    }

    pub fn proves(msg: MessagePat, agent: AgentPat, body: Pattern) -> Self {
        Pattern::Proves(msg, agent, Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Pattern::Not(Box::new(self))
    }

    pub fn and(self, other: Pattern) -> Self {
        Pattern::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Pattern) -> Self {
        self.not().and(other.not()).not()
    }

    pub fn implies(self, other: Pattern) -> Self {
        self.not().or(other)
    }

    pub fn iff(self, other: Pattern) -> Self {
        self.clone().implies(other.clone()).and(other.implies(self))
    }

    /// `true` instantiated at an agent pattern: `[b]b (b knows b)`.
    pub fn truth(agent: AgentPat) -> Self {
        let msg = match &agent {
            AgentPat::Var(v) => MessagePat::AgentAtom(v.clone()),
            AgentPat::Name(a) => MessagePat::Atom(a.clone()),
        };
        Pattern::proves(msg.clone(), agent.clone(), Pattern::Knows(agent, msg))
    }

    pub fn falsity(agent: AgentPat) -> Self {
        Pattern::truth(agent).not()
    }

    /// The closed pattern matching exactly `f`.
    pub fn from_formula(f: &Formula) -> Self {
        match f {
            Formula::Prop(p) => Pattern::Prop(p.clone()),
            Formula::Knows(a, m) => Pattern::Knows(AgentPat::Name(a.clone()), MessagePat::from_term(m)),
            Formula::Not(x) => Pattern::from_formula(x).not(),
            Formula::And(l, r) => Pattern::from_formula(l).and(Pattern::from_formula(r)),
            Formula::Proves(m, a, body) => Pattern::proves(
                MessagePat::from_term(m),
                AgentPat::Name(a.clone()),
                Pattern::from_formula(body),
            ),
        }
    }

    /// `s[θ]`; `None` when some metavariable is unbound.
    pub fn instantiate(&self, sub: &Substitution) -> Option<Formula> {
        Some(match self {
            Pattern::Var(v) => sub.formulas.get(v)?.clone(),
            Pattern::Prop(p) => Formula::Prop(p.clone()),
            Pattern::Knows(a, m) => Formula::Knows(a.instantiate(sub)?, m.instantiate(sub)?),
            Pattern::Not(x) => x.instantiate(sub)?.not(),
            Pattern::And(l, r) => l.instantiate(sub)?.and(r.instantiate(sub)?),
            Pattern::Proves(m, a, body) => {
                Formula::proves(m.instantiate(sub)?, a.instantiate(sub)?, body.instantiate(sub)?)
            }
        })
    }

    /// Closed patterns convert back to formulas.
    pub fn to_formula(&self) -> Option<Formula> {
        self.instantiate(&Substitution::default())
    }

    fn matches(&self, f: &Formula, sub: &mut Substitution) -> bool {
        match (self, f) {
            (Pattern::Var(v), _) => bind(&mut sub.formulas, v, f),
            (Pattern::Prop(p), Formula::Prop(q)) => p == q,
            (Pattern::Knows(pa, pm), Formula::Knows(a, m)) => pa.matches(a, sub) && pm.matches(m, sub),
            (Pattern::Not(px), Formula::Not(x)) => px.matches(x, sub),
            (Pattern::And(pl, pr), Formula::And(l, r)) => pl.matches(l, sub) && pr.matches(r, sub),
            (Pattern::Proves(pm, pa, pb), Formula::Proves(m, a, b)) => {
                pm.matches(m, sub) && pa.matches(a, sub) && pb.matches(b, sub)
            }
            _ => false,
        }
    }
}

/// A named axiom schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub name: String,
    pub pattern: Pattern,
}

impl Schema {
    pub fn new(name: impl Into<String>, pattern: Pattern) -> Self {
        Schema { name: name.into(), pattern }
    }

    pub fn instantiate(&self, sub: &Substitution) -> Option<Formula> {
        self.pattern.instantiate(sub)
    }
}

/// First-order matching, left to right and outermost first. The first
/// binding of a metavariable fixes it; later occurrences must agree.
pub fn match_schema(schema: &Schema, f: &Formula) -> Option<Substitution> {
    let mut sub = Substitution::default();
    schema.pattern.matches(f, &mut sub).then_some(sub)
}
