//! The axiom schemas and instance recognition.

use std::fmt;

use super::taut::is_tautology_instance;
use crate::syntax::{match_schema, AgentPat, Formula, MessagePat, Pattern, Schema};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomName {
    /// `[M]a (a knows M)`
    SelfKnowledge,
    /// `[M]a (φ -> ψ) -> ([M]a φ -> [M]a ψ)`
    K,
    /// `[M]a φ -> (a knows M -> φ)`
    EpistemicTruthfulness,
    /// `~[M]a false`
    ProofConsistency,
    /// `[M]a φ | [M]a ~φ`
    NegationCompleteness,
}

impl AxiomName {
    pub const ALL: [AxiomName; 5] = [
        AxiomName::SelfKnowledge,
        AxiomName::K,
        AxiomName::EpistemicTruthfulness,
        AxiomName::ProofConsistency,
        AxiomName::NegationCompleteness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomName::SelfKnowledge => "SelfKnowledge",
            AxiomName::K => "K",
            AxiomName::EpistemicTruthfulness => "EpistemicTruthfulness",
            AxiomName::ProofConsistency => "ProofConsistency",
            AxiomName::NegationCompleteness => "NegationCompleteness",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        AxiomName::ALL.into_iter().find(|a| a.name() == name)
    }

    pub fn schema(self) -> Schema {
        let boxed = |body: Pattern| Pattern::proves(MessagePat::var("M"), AgentPat::var("a"), body);
        let phi = Pattern::var("phi");
        let pattern = match self {
            AxiomName::SelfKnowledge => boxed(Pattern::Knows(AgentPat::var("a"), MessagePat::var("M"))),
            AxiomName::K => boxed(phi.clone().implies(Pattern::var("psi")))
                .implies(boxed(phi).implies(boxed(Pattern::var("psi")))),
            AxiomName::EpistemicTruthfulness => {
                boxed(phi.clone()).implies(Pattern::Knows(AgentPat::var("a"), MessagePat::var("M")).implies(phi))
            }
            AxiomName::ProofConsistency => boxed(Pattern::falsity(AgentPat::var("t"))).not(),
            AxiomName::NegationCompleteness => boxed(phi.clone()).or(boxed(phi.not())),
        };
        Schema::new(self.name(), pattern)
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a formula was recognized as an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognized {
    Axiom(AxiomName),
    Gamma1(String),
    Taut,
}

impl fmt::Display for Recognized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recognized::Axiom(a) => write!(f, "{a}"),
            Recognized::Gamma1(n) => write!(f, "{n} (gamma1)"),
            Recognized::Taut => f.write_str("Taut"),
        }
    }
}

/// The five built-in schemas plus any extra knowledge axioms.
#[derive(Clone, Debug)]
pub struct AxiomCatalog {
    builtin: Vec<(AxiomName, Schema)>,
    gamma1: Vec<Schema>,
}

impl Default for AxiomCatalog {
    fn default() -> Self {
        AxiomCatalog::new(Vec::new())
    }
}

impl AxiomCatalog {
    /// Panics if a gamma1 schema reuses a name.
    pub fn new(gamma1: Vec<Schema>) -> Self {
        for (i, s) in gamma1.iter().enumerate() {
            assert!(
                AxiomName::from_name(&s.name).is_none() && gamma1[..i].iter().all(|t| t.name != s.name),
                "duplicate axiom name {}",
                s.name
            );
        }
        AxiomCatalog { builtin: AxiomName::ALL.iter().map(|&a| (a, a.schema())).collect(), gamma1 }
    }

    pub fn gamma1(&self) -> &[Schema] {
        &self.gamma1
    }

    pub fn matches(&self, name: AxiomName, f: &Formula) -> bool {
        let (_, schema) = self.builtin.iter().find(|(n, _)| *n == name).expect("all axioms are built in");
        match_schema(schema, f).is_some()
    }

    /// `None` if no schema of that name exists.
    pub fn matches_gamma1(&self, name: &str, f: &Formula) -> Option<bool> {
        self.gamma1.iter().find(|s| s.name == name).map(|s| match_schema(s, f).is_some())
    }

    /// The first matching built-in or gamma1 schema, else `Taut` for
    /// tautology instances.
    pub fn is_axiom(&self, f: &Formula) -> Option<Recognized> {
        if let Some((name, _)) = self.builtin.iter().find(|(_, s)| match_schema(s, f).is_some()) {
            return Some(Recognized::Axiom(*name));
        }
        if let Some(s) = self.gamma1.iter().find(|s| match_schema(s, f).is_some()) {
            return Some(Recognized::Gamma1(s.name.clone()));
        }
        is_tautology_instance(f).then_some(Recognized::Taut)
    }
}

pub fn is_axiom(f: &Formula) -> Option<Recognized> {
    AxiomCatalog::default().is_axiom(f)
}
