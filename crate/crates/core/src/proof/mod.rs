//! The Hilbert system: axiom schemas, the two rules, derivation checking
//! and a corpus of worked derivations.
//!
//! Rules: modus ponens from `φ` and `φ -> ψ`, and necessitation from `φ`
//! to `[M]a φ`. Any substitution instance of a propositional tautology is
//! an axiom.

mod axioms;
mod builder;
mod corpus;
mod format;
mod taut;

use std::fmt;

use thiserror::Error;

use crate::syntax::{AgentName, Formula, MessageTerm};

pub use axioms::{is_axiom, AxiomCatalog, AxiomName, Recognized};
pub use builder::ProofBuilder;
pub use corpus::{corpus, corpus_entry, derive_regularity, CorpusEntry};
pub use format::{parse_derivation, render_derivation, FormatError};
pub use taut::{check_tautology, is_tautology_instance, MAX_LETTERS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Taut,
    Axiom(AxiomName),
    Gamma1(String),
    /// 1-based index into the premises.
    Premise(usize),
    /// Line `i` holds `φ` and line `j` holds `φ -> ψ` (both 1-based).
    MP(usize, usize),
    /// Line `i` holds `φ`; this line is `[msg]agent φ`.
    Nec(usize, MessageTerm, AgentName),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Taut => f.write_str("taut"),
            Justification::Axiom(a) => write!(f, "ax:{a}"),
            Justification::Gamma1(n) => write!(f, "g1:{n}"),
            Justification::Premise(k) => write!(f, "prem:{k}"),
            Justification::MP(i, j) => write!(f, "mp:{i},{j}"),
            Justification::Nec(i, m, a) => write!(f, "nec:{i},[{m}]{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub premises: Vec<Formula>,
    pub lines: Vec<Line>,
}

impl Derivation {
    pub fn new(premises: Vec<Formula>) -> Self {
        Derivation { premises, lines: Vec::new() }
    }

    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.lines.push(Line { formula, justification });
        self.lines.len()
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FailureKind {
    #[error("cites line {0}, which is not an earlier line")]
    BadCitation(usize),
    #[error("no premise {0}")]
    NoPremise(usize),
    #[error("does not match premise {0}")]
    PremiseMismatch(usize),
    #[error("not a tautology instance")]
    NotTautology,
    #[error("too many propositional letters to check as a tautology")]
    TooManyLetters,
    #[error("not an instance of {0}")]
    NotInstance(String),
    #[error("no gamma1 axiom named {0}")]
    UnknownGamma1(String),
    #[error("line {1} is not `line {0} -> this line`")]
    BadModusPonens(usize, usize),
    #[error("not the necessitation of line {0}")]
    BadNecessitation(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct CheckFailure {
    /// 1-based.
    pub line: usize,
    pub kind: FailureKind,
}

/// Splits `φ -> ψ` into `(φ, ψ)`.
pub fn as_implication(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::Not(x) = f {
        if let Formula::And(l, r) = &**x {
            if let (Formula::Not(nl), Formula::Not(consequent)) = (&**l, &**r) {
                if let Formula::Not(antecedent) = &**nl {
                    return Some((antecedent, consequent));
                }
            }
        }
    }
    None
}

/// Checks every line; stops at the first failure.
pub fn check_derivation(d: &Derivation, catalog: &AxiomCatalog) -> Result<(), CheckFailure> {
    for (idx, line) in d.lines.iter().enumerate() {
        let n = idx + 1;
        check_line(d, catalog, n, line).map_err(|kind| CheckFailure { line: n, kind })?;
    }
    Ok(())
}

fn check_line(d: &Derivation, catalog: &AxiomCatalog, n: usize, line: &Line) -> Result<(), FailureKind> {
    let earlier = |i: usize| {
        if i >= 1 && i < n {
            Ok(&d.lines[i - 1].formula)
        } else {
            Err(FailureKind::BadCitation(i))
        }
    };
    let f = &line.formula;
    match &line.justification {
        Justification::Taut => match check_tautology(f) {
            Some(true) => Ok(()),
            Some(false) => Err(FailureKind::NotTautology),
            None => Err(FailureKind::TooManyLetters),
        },
        Justification::Axiom(a) => {
            if catalog.matches(*a, f) {
                Ok(())
            } else {
                Err(FailureKind::NotInstance(a.name().to_string()))
            }
        }
        Justification::Gamma1(name) => match catalog.matches_gamma1(name, f) {
            Some(true) => Ok(()),
            Some(false) => Err(FailureKind::NotInstance(name.clone())),
            None => Err(FailureKind::UnknownGamma1(name.clone())),
        },
        Justification::Premise(k) => match d.premises.get(k.wrapping_sub(1)) {
            None => Err(FailureKind::NoPremise(*k)),
            Some(p) if p == f => Ok(()),
            Some(_) => Err(FailureKind::PremiseMismatch(*k)),
        },
        Justification::MP(i, j) => {
            let (phi, imp) = (earlier(*i)?, earlier(*j)?);
            match as_implication(imp) {
                Some((a, c)) if a == phi && c == f => Ok(()),
                _ => Err(FailureKind::BadModusPonens(*i, *j)),
            }
        }
        Justification::Nec(i, m, a) => {
            let phi = earlier(*i)?;
            if *f == Formula::proves(m.clone(), a.clone(), phi.clone()) {
                Ok(())
            } else {
                Err(FailureKind::BadNecessitation(*i))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::build::*;

    #[test]
    fn implication_split() {
        let f = prop("P").implies(prop("Q"));
        assert_eq!(as_implication(&f), Some((&prop("P"), &prop("Q"))));
        assert_eq!(as_implication(&prop("P").and(prop("Q"))), None);
    }

    #[test]
    fn checks_rules() {
        let p = prop("P");
        let q = prop("Q");
        let mut d = Derivation::new(vec![p.clone()]);
        d.push(p.clone(), Justification::Premise(1));
        d.push(p.clone().implies(q.clone().implies(p.clone())), Justification::Taut);
        d.push(q.clone().implies(p.clone()), Justification::MP(1, 2));
        d.push(proves(atom("m"), "a", p.clone()), Justification::Nec(1, atom("m"), agent("a")));
        assert_eq!(check_derivation(&d, &AxiomCatalog::default()), Ok(()));

        let mut bad = d.clone();
        bad.lines[2].justification = Justification::MP(2, 1);
        let err = check_derivation(&bad, &AxiomCatalog::default()).unwrap_err();
        assert_eq!(err, CheckFailure { line: 3, kind: FailureKind::BadModusPonens(2, 1) });

        let mut bad = d.clone();
        bad.lines[0].justification = Justification::MP(1, 1);
        assert_eq!(check_derivation(&bad, &AxiomCatalog::default()).unwrap_err().kind, FailureKind::BadCitation(1));

        let mut bad = d;
        bad.lines[3].justification = Justification::Nec(1, atom("n"), agent("a"));
        assert_eq!(check_derivation(&bad, &AxiomCatalog::default()).unwrap_err().kind, FailureKind::BadNecessitation(1));
    }

    #[test]
    fn premise_and_axiom_failures() {
        let mut d = Derivation::new(vec![]);
        d.push(prop("P"), Justification::Premise(1));
        assert_eq!(check_derivation(&d, &AxiomCatalog::default()).unwrap_err().kind, FailureKind::NoPremise(1));
        let mut d = Derivation::new(vec![]);
        d.push(prop("P"), Justification::Axiom(AxiomName::K));
        assert_eq!(
            check_derivation(&d, &AxiomCatalog::default()).unwrap_err().kind,
            FailureKind::NotInstance("K".into())
        );
        let mut d = Derivation::new(vec![]);
        d.push(prop("P"), Justification::Gamma1("Own".into()));
        assert_eq!(
            check_derivation(&d, &AxiomCatalog::default()).unwrap_err().kind,
            FailureKind::UnknownGamma1("Own".into())
        );
    }
}
