//! Message terms, formulas and their concrete text syntax.
//!
//! Only `~`, `&` and the proof modality `[M]a` are primitive. The surface
//! forms `true`, `false`, `|`, `->` and `<->` are expanded by the parser and
//! by the builder methods on [`Formula`], so every [`Formula`] value is already
//! in core form.

mod lexer;
mod parser;
mod render;
mod schema;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub(crate) use lexer::Tok;
pub(crate) use parser::Parser;
pub use lexer::SyntaxError;
pub use parser::{parse_agent, parse_formula, parse_message, parse_schema};
pub use render::{render, render_message};
pub use schema::{match_schema, AgentPat, MessagePat, Pattern, Schema, Substitution};

const KEYWORDS: &[&str] = &["knows", "true", "false", "sig", "recv"];

fn is_lower_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
        && !KEYWORDS.contains(&s)
}

fn is_upper_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('A'..='Z')) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A lowercase name. Used for agents and for atomic message terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentName(Arc<str>);

impl AgentName {
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_lower_ident(name) {
            Ok(AgentName(Arc::from(name)))
        } else {
            Err(SyntaxError::InvalidName { name: name.to_string() })
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for AgentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for AgentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An uppercase propositional variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropName(Arc<str>);

impl PropName {
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_upper_ident(name) {
            Ok(PropName(Arc::from(name)))
        } else {
            Err(SyntaxError::InvalidName { name: name.to_string() })
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for PropName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for PropName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The finite, nonempty set of agents formulas may talk about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    agents: BTreeSet<AgentName>,
}

impl Universe {
    pub fn new<I: IntoIterator<Item = AgentName>>(agents: I) -> Result<Self, SyntaxError> {
        let agents: BTreeSet<_> = agents.into_iter().collect();
        if agents.is_empty() {
            return Err(SyntaxError::EmptyUniverse);
        }
        Ok(Universe { agents })
    }

    /// Parses a comma separated agent list such as `a,b,c`.
    pub fn from_list(list: &str) -> Result<Self, SyntaxError> {
        let agents = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(AgentName::new)
            .collect::<Result<Vec<_>, _>>()?;
        Universe::new(agents)
    }

    pub fn singleton(agent: AgentName) -> Self {
        Universe { agents: BTreeSet::from([agent]) }
    }

    pub fn contains(&self, agent: &AgentName) -> bool {
        self.agents.contains(agent)
    }

    /// Lexicographically first agent; the default witness for `true`.
    pub fn first(&self) -> &AgentName {
        self.agents.iter().next().expect("universe is nonempty")
    }

    pub fn agents(&self) -> impl Iterator<Item = &AgentName> {
        self.agents.iter()
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.agents.len() == 1
    }
}

impl Default for Universe {
    fn default() -> Self {
        Universe::from_list("a,b").expect("static agent list")
    }
}

/// Message terms: atoms, pairs and signatures.
///
/// Atoms are arbitrary lowercase names. An atom that coincides with an agent
/// name denotes that agent's name as data (every agent owns its own name).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MessageTerm {
    Atom(AgentName),
    Pair(Box<MessageTerm>, Box<MessageTerm>),
    Sig(Box<MessageTerm>, AgentName),
}

impl MessageTerm {
    pub fn atom(name: AgentName) -> Self {
        MessageTerm::Atom(name)
    }

    pub fn pair(left: MessageTerm, right: MessageTerm) -> Self {
        MessageTerm::Pair(Box::new(left), Box::new(right))
    }

    pub fn sig(body: MessageTerm, signer: AgentName) -> Self {
        MessageTerm::Sig(Box::new(body), signer)
    }

    /// Node count, with the signer of a signature counted as one node so
    /// that `sig(M, b)` and `(M, b)` have equal size.
    pub fn size(&self) -> usize {
        match self {
            MessageTerm::Atom(_) => 1,
            MessageTerm::Pair(l, r) => 1 + l.size() + r.size(),
            MessageTerm::Sig(body, _) => 2 + body.size(),
        }
    }

    /// All subterms including `self`. The signer of `sig(M, b)` counts as
    /// the atom `b`.
    pub fn subterms(&self) -> BTreeSet<MessageTerm> {
        let mut out = BTreeSet::new();
        self.collect_subterms(&mut out);
        out
    }

    fn collect_subterms(&self, out: &mut BTreeSet<MessageTerm>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            MessageTerm::Atom(_) => {}
            MessageTerm::Pair(l, r) => {
                l.collect_subterms(out);
                r.collect_subterms(out);
            }
            MessageTerm::Sig(body, signer) => {
                body.collect_subterms(out);
                out.insert(MessageTerm::Atom(signer.clone()));
            }
        }
    }

    /// Agent names that occur as signers.
    pub fn signers(&self) -> BTreeSet<AgentName> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(m) = stack.pop() {
            match m {
                MessageTerm::Atom(_) => {}
                MessageTerm::Pair(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                MessageTerm::Sig(body, signer) => {
                    out.insert(signer.clone());
                    stack.push(body);
                }
            }
        }
        out
    }
}

impl fmt::Debug for MessageTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_message(self))
    }
}

impl fmt::Display for MessageTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_message(self))
    }
}

/// A proof modality `[M]a`, identified by its message and checking agent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modality {
    pub msg: MessageTerm,
    pub agent: AgentName,
}

impl Modality {
    pub fn new(msg: MessageTerm, agent: AgentName) -> Self {
        Modality { msg, agent }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.msg, self.agent)
    }
}

/// Core formulas.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Prop(PropName),
    /// The knowledge atom `a knows M`.
    Knows(AgentName, MessageTerm),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// `[M]a φ`: M can prove whether or not φ to a.
    Proves(MessageTerm, AgentName, Box<Formula>),
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Prop(p) => write!(f, "Prop({p})"),
            Formula::Knows(a, m) => write!(f, "Knows({a}, {m})"),
            Formula::Not(x) => write!(f, "Not({x:?})"),
            Formula::And(l, r) => write!(f, "And({l:?}, {r:?})"),
            Formula::Proves(m, a, body) => write!(f, "Proves({m}, {a}, {body:?})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl Formula {
    pub fn prop(name: PropName) -> Self {
        Formula::Prop(name)
    }

    pub fn knows(agent: AgentName, msg: MessageTerm) -> Self {
        Formula::Knows(agent, msg)
    }

    pub fn proves(msg: MessageTerm, agent: AgentName, body: Formula) -> Self {
        Formula::Proves(msg, agent, Box::new(body))
    }

    pub fn boxed(modality: &Modality, body: Formula) -> Self {
        Formula::Proves(modality.msg.clone(), modality.agent.clone(), Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    /// `φ | ψ := ~(~φ & ~ψ)`
    pub fn or(self, other: Formula) -> Self {
        self.not().and(other.not()).not()
    }

    /// `φ -> ψ := ~φ | ψ`
    pub fn implies(self, other: Formula) -> Self {
        self.not().or(other)
    }

    /// `φ <-> ψ := (φ -> ψ) & (ψ -> φ)`
    pub fn iff(self, other: Formula) -> Self {
        self.clone().implies(other.clone()).and(other.implies(self))
    }

    /// `true := [a]a (a knows a)`
    pub fn truth(agent: &AgentName) -> Self {
        let a = MessageTerm::Atom(agent.clone());
        Formula::proves(a.clone(), agent.clone(), Formula::Knows(agent.clone(), a))
    }

    /// `false := ~true`
    pub fn falsity(agent: &AgentName) -> Self {
        Formula::truth(agent).not()
    }

    /// Number of formula nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Knows(..) => 1,
            Formula::Not(x) => 1 + x.size(),
            Formula::And(l, r) => 1 + l.size() + r.size(),
            Formula::Proves(_, _, body) => 1 + body.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Knows(..) => 0,
            Formula::Not(x) => 1 + x.depth(),
            Formula::And(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Proves(_, _, body) => 1 + body.depth(),
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Prop(_) | Formula::Knows(..) => Vec::new(),
            Formula::Not(x) => vec![x],
            Formula::And(l, r) => vec![l, r],
            Formula::Proves(_, _, body) => vec![body],
        }
    }

    /// Smallest set containing `self` and closed under immediate subformulas.
    pub fn subformula_closure(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if out.insert(f.clone()) {
                stack.extend(f.children());
            }
        }
        out
    }

    fn visit<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        for c in self.children() {
            c.visit(visit);
        }
    }

    pub fn props(&self) -> BTreeSet<PropName> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Knowledge atoms `a knows M` occurring in the formula.
    pub fn knowledge_atoms(&self) -> BTreeSet<(AgentName, MessageTerm)> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Knows(a, m) = f {
                out.insert((a.clone(), m.clone()));
            }
        });
        out
    }

    /// The modal signature: every `[M]a` occurring in the formula.
    pub fn modalities(&self) -> BTreeSet<Modality> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Proves(m, a, _) = f {
                out.insert(Modality::new(m.clone(), a.clone()));
            }
        });
        out
    }

    /// Every message term occurring in the formula, at top level.
    pub fn messages(&self) -> BTreeSet<MessageTerm> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Knows(_, m) | Formula::Proves(m, _, _) => {
                out.insert(m.clone());
            }
            _ => {}
        });
        out
    }

    /// Agents in agent position (knowers, checkers and signers).
    pub fn agents(&self) -> BTreeSet<AgentName> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Knows(a, m) | Formula::Proves(m, a, _) => {
                out.insert(a.clone());
                out.extend(m.signers());
            }
            _ => {}
        });
        out
    }
}

/// Literal constructors used by tests, the derivation corpus and demos.
///
/// These panic on malformed names and are meant for fixed, known-good input.
pub mod build {
    use super::*;

    pub fn agent(name: &str) -> AgentName {
        AgentName::new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn atom(name: &str) -> MessageTerm {
        MessageTerm::Atom(agent(name))
    }

    pub fn pair(l: MessageTerm, r: MessageTerm) -> MessageTerm {
        MessageTerm::pair(l, r)
    }

    pub fn sig(body: MessageTerm, signer: &str) -> MessageTerm {
        MessageTerm::sig(body, agent(signer))
    }

    pub fn prop(name: &str) -> Formula {
        Formula::Prop(PropName::new(name).unwrap_or_else(|e| panic!("{e}")))
    }

    pub fn knows(who: &str, msg: MessageTerm) -> Formula {
        Formula::Knows(agent(who), msg)
    }

    pub fn proves(msg: MessageTerm, who: &str, body: Formula) -> Formula {
        Formula::proves(msg, agent(who), body)
    }

    pub fn modality(msg: MessageTerm, who: &str) -> Modality {
        Modality::new(msg, agent(who))
    }
}
