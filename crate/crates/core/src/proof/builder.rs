//! Incremental construction of checked derivations.

use std::collections::HashMap;

use super::{as_implication, AxiomName, Derivation, Justification};
use crate::syntax::{AgentName, Formula, MessageTerm};

/// Appends lines and hands back their 1-based numbers. A formula already
/// on some line is not derived again.
#[derive(Clone, Debug, Default)]
pub struct ProofBuilder {
    derivation: Derivation,
    seen: HashMap<Formula, usize>,
}

impl ProofBuilder {
    pub fn new(premises: Vec<Formula>) -> Self {
        ProofBuilder { derivation: Derivation::new(premises), seen: HashMap::new() }
    }

    pub fn formula(&self, line: usize) -> &Formula {
        &self.derivation.lines[line - 1].formula
    }

    pub fn finish(self) -> Derivation {
        self.derivation
    }

    pub fn line(&mut self, f: Formula, j: Justification) -> usize {
        if let Some(&n) = self.seen.get(&f) {
            return n;
        }
        let n = self.derivation.push(f.clone(), j);
        self.seen.insert(f, n);
        n
    }

    pub fn taut(&mut self, f: Formula) -> usize {
        self.line(f, Justification::Taut)
    }

    pub fn axiom(&mut self, name: AxiomName, f: Formula) -> usize {
        self.line(f, Justification::Axiom(name))
    }

    pub fn premise(&mut self, k: usize) -> usize {
        let f = self.derivation.premises[k - 1].clone();
        self.line(f, Justification::Premise(k))
    }

    /// Line `i` holds `φ`, line `j` holds `φ -> ψ`; derives `ψ`.
    pub fn mp(&mut self, i: usize, j: usize) -> usize {
        let (_, c) = as_implication(self.formula(j)).expect("modus ponens needs an implication");
        let c = c.clone();
        self.line(c, Justification::MP(i, j))
    }

    pub fn nec(&mut self, i: usize, msg: &MessageTerm, agent: &AgentName) -> usize {
        let f = Formula::proves(msg.clone(), agent.clone(), self.formula(i).clone());
        self.line(f, Justification::Nec(i, msg.clone(), agent.clone()))
    }

    /// Derives `concl` from the given lines by one tautology
    /// `p1 -> (p2 -> ... -> concl)` and a chain of modus ponens.
    pub fn pl(&mut self, concl: Formula, from: &[usize]) -> usize {
        let taut = from.iter().rev().fold(concl, |acc, &i| self.formula(i).clone().implies(acc));
        let mut cur = self.taut(taut);
        for &i in from {
            cur = self.mp(i, cur);
        }
        cur
    }

    /// From a line `φ -> ψ`, derives `[M]a φ -> [M]a ψ`.
    pub fn regularity(&mut self, i: usize, msg: &MessageTerm, agent: &AgentName) -> usize {
        let (phi, psi) = as_implication(self.formula(i)).expect("regularity needs an implication");
        let (phi, psi) = (phi.clone(), psi.clone());
        let b = |x: Formula| Formula::proves(msg.clone(), agent.clone(), x);
        let necessitated = self.nec(i, msg, agent);
        let k = self.axiom(AxiomName::K, self.formula(necessitated).clone().implies(b(phi).implies(b(psi))));
        self.mp(necessitated, k)
    }

    /// From a line `φ <-> ψ`, derives `[M]a φ <-> [M]a ψ`.
    pub fn regularity_iff(&mut self, i: usize, msg: &MessageTerm, agent: &AgentName) -> usize {
        let Formula::And(fwd, _) = self.formula(i) else { panic!("regularity_iff needs a biconditional") };
        let (phi, psi) = as_implication(fwd).expect("regularity_iff needs a biconditional");
        let (phi, psi) = (phi.clone(), psi.clone());
        let b = |x: &Formula| Formula::proves(msg.clone(), agent.clone(), x.clone());
        let to = self.pl(phi.clone().implies(psi.clone()), &[i]);
        let from = self.pl(psi.clone().implies(phi.clone()), &[i]);
        let to = self.regularity(to, msg, agent);
        let from = self.regularity(from, msg, agent);
        self.pl(b(&phi).iff(b(&psi)), &[to, from])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{check_derivation, AxiomCatalog};
    use crate::syntax::build::*;

    #[test]
    fn helpers_produce_checkable_lines() {
        let (p, q) = (prop("P"), prop("Q"));
        let mut b = ProofBuilder::new(vec![p.clone().iff(q.clone())]);
        let prem = b.premise(1);
        let n = b.regularity_iff(prem, &atom("m"), &agent("a"));
        let bp = proves(atom("m"), "a", p);
        let bq = proves(atom("m"), "a", q);
        assert_eq!(b.formula(n), &bp.iff(bq));
        let d = b.finish();
        assert_eq!(check_derivation(&d, &AxiomCatalog::default()), Ok(()));
    }

    #[test]
    fn repeated_formulas_reuse_lines() {
        let mut b = ProofBuilder::new(vec![]);
        let x = b.taut(prop("P").implies(prop("P")));
        let y = b.taut(prop("P").implies(prop("P")));
        assert_eq!(x, y);
        assert_eq!(b.finish().lines.len(), 1);
    }
}
