//! Worked derivations of the system's derived laws, instantiated at
//! `φ = P`, `ψ = Q`, message `m` and agents `a`, `b`.
//!
//! The derivation helpers are generic in the formulas so larger proofs can
//! inline smaller ones.

use super::{AxiomName, Derivation, ProofBuilder};
use crate::syntax::{AgentName, Formula, MessageTerm, PropName};

pub struct CorpusEntry {
    pub name: &'static str,
    /// The conclusion in surface syntax, over agents `a,b`.
    pub statement: &'static str,
    pub derivation: Derivation,
}

#[derive(Clone)]
struct Ctx {
    m: MessageTerm,
    /// Witness agent for `true` and `false`.
    t: AgentName,
}

impl Ctx {
    fn bx(&self, a: &AgentName, f: Formula) -> Formula {
        Formula::proves(self.m.clone(), a.clone(), f)
    }

    fn knows(&self, a: &AgentName) -> Formula {
        Formula::knows(a.clone(), self.m.clone())
    }

    fn falsity(&self) -> Formula {
        Formula::falsity(&self.t)
    }

    fn truth_line(&self, b: &mut ProofBuilder) -> usize {
        b.axiom(AxiomName::SelfKnowledge, Formula::truth(&self.t))
    }

    /// `[M]a ([M]a φ -> φ)`
    fn self_truthfulness(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula) -> usize {
        let bphi = self.bx(a, phi.clone());
        let ka = self.knows(a);
        let et = b.axiom(AxiomName::EpistemicTruthfulness, bphi.clone().implies(ka.clone().implies(phi.clone())));
        let swapped = b.pl(ka.clone().implies(bphi.clone().implies(phi.clone())), &[et]);
        let reg = b.regularity(swapped, &self.m, a);
        let sk = b.axiom(AxiomName::SelfKnowledge, self.bx(a, ka));
        b.pl(self.bx(a, bphi.implies(phi.clone())), &[reg, sk])
    }

    /// `[M]a [M]a φ -> [M]a φ`
    fn proof_density(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula) -> usize {
        let bphi = self.bx(a, phi.clone());
        let st = self.self_truthfulness(b, a, phi);
        let k = b.axiom(
            AxiomName::K,
            b.formula(st).clone().implies(self.bx(a, bphi.clone()).implies(bphi.clone())),
        );
        b.pl(self.bx(a, bphi.clone()).implies(bphi), &[st, k])
    }

    /// `~[M]a false <-> ([M]a φ -> ~[M]a ~φ)`
    fn consistency_dual(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula) -> usize {
        let (bp, bnp) = (self.bx(a, phi.clone()), self.bx(a, phi.clone().not()));
        let contra = phi.clone().and(phi.clone().not());
        let bfalse = self.bx(a, self.falsity());

        let intro = b.taut(phi.clone().implies(phi.clone().not().implies(contra.clone())));
        let reg = b.regularity(intro, &self.m, a);
        let k = b.axiom(
            AxiomName::K,
            b.formula(reg).clone().consequent().implies(bnp.clone().implies(self.bx(a, contra.clone()))),
        );
        let both = b.pl(bp.clone().implies(bnp.clone().implies(self.bx(a, contra.clone()))), &[reg, k]);
        let explode = b.taut(contra.implies(self.falsity()));
        let explode = b.regularity(explode, &self.m, a);
        let only_if = b.pl(bfalse.clone().not().implies(bp.clone().implies(bnp.clone().not())), &[both, explode]);

        let truth = self.truth_line(b);
        let to_p = b.pl(self.falsity().implies(phi.clone()), &[truth]);
        let to_p = b.regularity(to_p, &self.m, a);
        let to_np = b.pl(self.falsity().implies(phi.clone().not()), &[truth]);
        let to_np = b.regularity(to_np, &self.m, a);
        let conv = b.pl(bp.clone().implies(bnp.clone().not()).implies(bfalse.clone().not()), &[to_p, to_np]);
        b.pl(bfalse.not().iff(bp.implies(bnp.not())), &[only_if, conv])
    }

    /// `[M]a ~φ <-> [M]a (φ -> false)`
    fn negation_as_implication(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula) -> usize {
        let truth = self.truth_line(b);
        let eq = b.pl(phi.clone().not().iff(phi.clone().implies(self.falsity())), &[truth]);
        b.regularity_iff(eq, &self.m, a)
    }

    /// `[M]a ~φ <-> ~[M]a φ`
    fn maximal_consistency(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula) -> usize {
        let (bp, bnp) = (self.bx(a, phi.clone()), self.bx(a, phi.clone().not()));
        let pc = b.axiom(AxiomName::ProofConsistency, self.bx(a, self.falsity()).not());
        let dual = self.consistency_dual(b, a, phi);
        let c = b.pl(bp.clone().implies(bnp.clone().not()), &[pc, dual]);
        let d = b.pl(bnp.clone().implies(bp.clone().not()), &[c]);
        let nc = b.axiom(AxiomName::NegationCompleteness, bp.clone().or(bnp.clone()));
        let f = b.pl(bp.clone().not().implies(bnp.clone()), &[nc]);
        b.pl(bnp.iff(bp.not()), &[d, f])
    }

    /// `[M]a (φ & ψ) <-> ([M]a φ & [M]a ψ)`
    fn conjunctions(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula, psi: &Formula) -> usize {
        let (bp, bq) = (self.bx(a, phi.clone()), self.bx(a, psi.clone()));
        let conj = phi.clone().and(psi.clone());
        let bc = self.bx(a, conj.clone());

        let intro = b.taut(phi.clone().implies(psi.clone().implies(conj.clone())));
        let reg = b.regularity(intro, &self.m, a);
        let k = b.axiom(
            AxiomName::K,
            b.formula(reg).clone().consequent().implies(bq.clone().implies(bc.clone())),
        );
        let curried = b.pl(bp.clone().implies(bq.clone().implies(bc.clone())), &[reg, k]);
        let into = b.pl(bp.clone().and(bq.clone()).implies(bc.clone()), &[curried]);
        let left = b.taut(conj.clone().implies(phi.clone()));
        let left = b.regularity(left, &self.m, a);
        let right = b.taut(conj.implies(psi.clone()));
        let right = b.regularity(right, &self.m, a);
        let out = b.pl(bc.clone().implies(bp.clone().and(bq.clone())), &[left, right]);
        let both = b.pl(bp.clone().and(bq.clone()).iff(bc.clone()), &[into, out]);
        b.pl(bc.iff(bp.and(bq)), &[both])
    }

    /// `[M]a (φ | ψ) <-> ([M]a φ | [M]a ψ)`
    fn disjunctions(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula, psi: &Formula) -> usize {
        let (np, nq) = (phi.clone().not(), psi.clone().not());
        let (bp, bq) = (self.bx(a, phi.clone()), self.bx(a, psi.clone()));
        let (bnp, bnq) = (self.bx(a, np.clone()), self.bx(a, nq.clone()));
        let bdisj = self.bx(a, phi.clone().or(psi.clone()));
        let bnconj = self.bx(a, np.clone().and(nq.clone()));

        let unfold = b.taut(bdisj.clone().iff(self.bx(a, np.clone().and(nq.clone()).not())));
        let mc = self.maximal_consistency(b, a, &np.clone().and(nq.clone()));
        let c = b.pl(bdisj.clone().iff(bnconj.clone().not()), &[unfold, mc]);
        let conj = self.conjunctions(b, a, &np, &nq);
        let e = b.pl(bnconj.not().iff(bnp.clone().and(bnq.clone()).not()), &[conj]);
        let f = b.pl(bdisj.clone().iff(bnp.clone().and(bnq.clone()).not()), &[c, e]);
        let de_morgan = b.taut(bnp.clone().and(bnq.clone()).not().iff(bnp.clone().not().or(bnq.clone().not())));
        let h = b.pl(bdisj.clone().iff(bnp.clone().not().or(bnq.clone().not())), &[f, de_morgan]);
        let mcp = self.maximal_consistency(b, a, phi);
        let j = b.pl(bnp.not().iff(bp.clone()), &[mcp]);
        let mcq = self.maximal_consistency(b, a, psi);
        let l = b.pl(bnq.not().iff(bq.clone()), &[mcq]);
        b.pl(bdisj.iff(bp.or(bq)), &[h, j, l])
    }

    /// `[M]a (φ -> ψ) <-> ([M]a φ -> [M]a ψ)`
    fn implications(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula, psi: &Formula) -> usize {
        let (bp, bq, bnp) = (self.bx(a, phi.clone()), self.bx(a, psi.clone()), self.bx(a, phi.clone().not()));
        let bimp = bp.clone().implies(bq.clone());
        let unfold = b.taut(bimp.clone().iff(bp.clone().not().or(bq.clone())));
        let mc = self.maximal_consistency(b, a, phi);
        let c = b.pl(bimp.clone().iff(bnp.or(bq.clone())), &[unfold, mc]);
        let disj = self.disjunctions(b, a, &phi.clone().not(), psi);
        let e = b.pl(bimp.clone().iff(self.bx(a, phi.clone().not().or(psi.clone()))), &[c, disj]);
        b.pl(self.bx(a, phi.clone().implies(psi.clone())).iff(bimp), &[e])
    }

    /// `[M]a (φ <-> ψ) <-> ([M]a φ <-> [M]a ψ)`
    fn biconditionals(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula, psi: &Formula) -> usize {
        let (bp, bq) = (self.bx(a, phi.clone()), self.bx(a, psi.clone()));
        let conj = self.conjunctions(b, a, &phi.clone().implies(psi.clone()), &psi.clone().implies(phi.clone()));
        let fwd = self.implications(b, a, phi, psi);
        let bwd = self.implications(b, a, psi, phi);
        b.pl(self.bx(a, phi.clone().iff(psi.clone())).iff(bp.iff(bq)), &[conj, fwd, bwd])
    }

    /// `[M]a [M]a φ <-> [M]a φ`
    fn idempotency(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula) -> usize {
        let np = phi.clone().not();
        let bp = self.bx(a, phi.clone());
        let bbp = self.bx(a, bp.clone());
        let bnp = self.bx(a, np.clone());
        let bbnp = self.bx(a, bnp.clone());

        let down = self.proof_density(b, a, phi);
        let down_neg = self.proof_density(b, a, &np);
        let mc = self.maximal_consistency(b, a, phi);
        let lifted = b.regularity_iff(mc, &self.m, a);
        let mc_outer = self.maximal_consistency(b, a, &bp);
        let i = b.pl(bbnp.iff(bbp.clone().not()), &[lifted, mc_outer]);
        let j = b.pl(bbp.clone().not().implies(bp.clone().not()), &[i, down_neg, mc]);
        let up = b.pl(bp.clone().implies(bbp.clone()), &[j]);
        b.pl(bbp.iff(bp), &[down, up])
    }

    /// `b knows M -> ([M]b [M]a φ <-> [M]a φ)`
    fn idempotency_across(&self, b: &mut ProofBuilder, a: &AgentName, outer: &AgentName, phi: &Formula) -> usize {
        let np = phi.clone().not();
        let kb = self.knows(outer);
        let bp = self.bx(a, phi.clone());
        let bnp = self.bx(a, np.clone());
        let obp = self.bx(outer, bp.clone());
        let obnp = self.bx(outer, bnp.clone());

        let et = b.axiom(AxiomName::EpistemicTruthfulness, obp.clone().implies(kb.clone().implies(bp.clone())));
        let down = b.pl(kb.clone().implies(obp.clone().implies(bp.clone())), &[et]);
        let et_neg = b.axiom(AxiomName::EpistemicTruthfulness, obnp.clone().implies(kb.clone().implies(bnp.clone())));
        let down_neg = b.pl(kb.clone().implies(obnp.clone().implies(bnp.clone())), &[et_neg]);
        let mc = self.maximal_consistency(b, a, phi);
        let lifted = b.regularity_iff(mc, &self.m, outer);
        let mc_outer = self.maximal_consistency(b, outer, &bp);
        let i = b.pl(obnp.iff(obp.clone().not()), &[lifted, mc_outer]);
        let up = b.pl(kb.clone().implies(bp.clone().implies(obp.clone())), &[i, down_neg, mc]);
        b.pl(kb.implies(obp.iff(bp)), &[down, up])
    }

    /// `~[M]a φ -> [M]a ~[M]a φ`
    fn five_law(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula) -> usize {
        let np = phi.clone().not();
        let bp = self.bx(a, phi.clone());
        let bnp = self.bx(a, np.clone());
        let bbnp = self.bx(a, bnp.clone());

        let mc = self.maximal_consistency(b, a, phi);
        let first = b.pl(bp.clone().not().implies(bnp.clone()), &[mc]);
        let idem = self.idempotency(b, a, &np);
        let second = b.pl(bnp.clone().implies(bbnp.clone()), &[idem]);
        let third = b.pl(bp.clone().not().implies(bbnp), &[first, second]);
        let fourth = b.pl(bnp.implies(bp.clone().not()), &[mc]);
        let fifth = b.regularity(fourth, &self.m, a);
        b.pl(bp.clone().not().implies(self.bx(a, bp.not())), &[third, fifth])
    }

    /// `a knows M -> ([M]a φ -> φ)`
    fn t_law(&self, b: &mut ProofBuilder, a: &AgentName, phi: &Formula) -> usize {
        let bp = self.bx(a, phi.clone());
        let ka = self.knows(a);
        let et = b.axiom(AxiomName::EpistemicTruthfulness, bp.clone().implies(ka.clone().implies(phi.clone())));
        b.pl(ka.implies(bp.implies(phi.clone())), &[et])
    }
}

trait Consequent {
    fn consequent(self) -> Formula;
}

impl Consequent for Formula {
    fn consequent(self) -> Formula {
        super::as_implication(&self).expect("an implication").1.clone()
    }
}

fn name(s: &str) -> AgentName {
    AgentName::new(s).expect("static agent name")
}

fn p(s: &str) -> Formula {
    Formula::prop(PropName::new(s).expect("static proposition name"))
}

/// Derives `[M]a φ -> [M]a ψ` from the premise `φ -> ψ`.
pub fn derive_regularity(phi: &Formula, psi: &Formula, msg: &MessageTerm, agent: &AgentName) -> Derivation {
    let mut b = ProofBuilder::new(vec![phi.clone().implies(psi.clone())]);
    let prem = b.premise(1);
    b.regularity(prem, msg, agent);
    b.finish()
}

/// The closed derivations, plus the regularity rule and the
/// negation-completeness derivation, which use premises.
pub fn corpus() -> Vec<CorpusEntry> {
    let ctx = Ctx { m: MessageTerm::atom(name("m")), t: name("a") };
    let (a, outer) = (name("a"), name("b"));
    let (phi, psi) = (p("P"), p("Q"));

    type Build = Box<dyn Fn(&Ctx, &mut ProofBuilder)>;
    let closed: Vec<(&'static str, &'static str, Build)> = vec![
        ("self-proof-of-truthfulness", "[m]a (([m]a P) -> P)", {
            let (a, phi) = (a.clone(), phi.clone());
            Box::new(move |c, b| {
                c.self_truthfulness(b, &a, &phi);
            })
        }),
        ("proof-density", "([m]a [m]a P) -> [m]a P", {
            let (a, phi) = (a.clone(), phi.clone());
            Box::new(move |c, b| {
                c.proof_density(b, &a, &phi);
            })
        }),
        ("proof-consistency-dual", "(~[m]a false) <-> (([m]a P) -> ~[m]a ~P)", {
            let (a, phi) = (a.clone(), phi.clone());
            Box::new(move |c, b| {
                c.consistency_dual(b, &a, &phi);
            })
        }),
        ("negation-as-implication", "([m]a ~P) <-> [m]a (P -> false)", {
            let (a, phi) = (a.clone(), phi.clone());
            Box::new(move |c, b| {
                c.negation_as_implication(b, &a, &phi);
            })
        }),
        ("maximal-consistency", "([m]a ~P) <-> ~[m]a P", {
            let (a, phi) = (a.clone(), phi.clone());
            Box::new(move |c, b| {
                c.maximal_consistency(b, &a, &phi);
            })
        }),
        ("proof-conjunctions-bis", "([m]a (P & Q)) <-> (([m]a P) & [m]a Q)", {
            let (a, phi, psi) = (a.clone(), phi.clone(), psi.clone());
            Box::new(move |c, b| {
                c.conjunctions(b, &a, &phi, &psi);
            })
        }),
        ("idp-bis", "([m]a (P | Q)) <-> (([m]a P) | [m]a Q)", {
            let (a, phi, psi) = (a.clone(), phi.clone(), psi.clone());
            Box::new(move |c, b| {
                c.disjunctions(b, &a, &phi, &psi);
            })
        }),
        ("k-bis", "([m]a (P -> Q)) <-> (([m]a P) -> [m]a Q)", {
            let (a, phi, psi) = (a.clone(), phi.clone(), psi.clone());
            Box::new(move |c, b| {
                c.implications(b, &a, &phi, &psi);
            })
        }),
        ("bi-k", "([m]a (P <-> Q)) <-> (([m]a P) <-> [m]a Q)", {
            let (a, phi, psi) = (a.clone(), phi.clone(), psi.clone());
            Box::new(move |c, b| {
                c.biconditionals(b, &a, &phi, &psi);
            })
        }),
        ("modal-idempotency", "([m]a [m]a P) <-> [m]a P", {
            let (a, phi) = (a.clone(), phi.clone());
            Box::new(move |c, b| {
                c.idempotency(b, &a, &phi);
            })
        }),
        ("modal-idempotency-bis", "b knows m -> (([m]b [m]a P) <-> [m]a P)", {
            let (a, outer, phi) = (a.clone(), outer.clone(), phi.clone());
            Box::new(move |c, b| {
                c.idempotency_across(b, &a, &outer, &phi);
            })
        }),
        ("five-law", "(~[m]a P) -> [m]a ~[m]a P", {
            let (a, phi) = (a.clone(), phi.clone());
            Box::new(move |c, b| {
                c.five_law(b, &a, &phi);
            })
        }),
        ("t-law", "a knows m -> (([m]a P) -> P)", {
            let (a, phi) = (a.clone(), phi.clone());
            Box::new(move |c, b| {
                c.t_law(b, &a, &phi);
            })
        }),
    ];

    let mut out: Vec<CorpusEntry> = closed
        .into_iter()
        .map(|(name, statement, build)| {
            let mut b = ProofBuilder::new(Vec::new());
            build(&ctx, &mut b);
            CorpusEntry { name, statement, derivation: b.finish() }
        })
        .collect();

    out.push(CorpusEntry {
        name: "regularity",
        statement: "([m]a P) -> [m]a Q",
        derivation: derive_regularity(&phi, &psi, &ctx.m, &a),
    });

    let bx = |f: Formula| ctx.bx(&a, f);
    let excluded_middle = phi.clone().or(phi.clone().not());
    let idp = bx(excluded_middle.clone()).implies(bx(phi.clone()).or(bx(phi.clone().not())));
    let mut b = ProofBuilder::new(vec![idp]);
    let prem = b.premise(1);
    let lem = b.taut(excluded_middle);
    let nec = b.nec(lem, &ctx.m, &a);
    b.mp(nec, prem);
    out.push(CorpusEntry { name: "nc-from-idp", statement: "([m]a P) | [m]a ~P", derivation: b.finish() });
    out
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{check_derivation, AxiomCatalog, Justification};
    use crate::syntax::{parse_formula, Universe};

    #[test]
    fn every_entry_checks_and_proves_its_statement() {
        let u = Universe::default();
        for e in corpus() {
            assert_eq!(check_derivation(&e.derivation, &AxiomCatalog::default()), Ok(()), "{}", e.name);
            let expected = parse_formula(e.statement, &u).unwrap();
            assert_eq!(e.derivation.conclusion(), Some(&expected), "{}", e.name);
        }
    }

    #[test]
    fn names_are_unique() {
        let names: std::collections::BTreeSet<_> = corpus().iter().map(|e| e.name).collect();
        assert_eq!(names.len(), corpus().len());
        assert_eq!(names.len(), 15);
    }

    #[test]
    fn regularity_has_four_lines() {
        let e = corpus_entry("regularity").unwrap();
        let kinds: Vec<_> = e.derivation.lines.iter().map(|l| l.justification.clone()).collect();
        assert!(matches!(kinds[..], [Justification::Premise(1), Justification::Nec(1, ..), Justification::Axiom(AxiomName::K), Justification::MP(2, 3)]));
    }

    #[test]
    fn nc_from_idp_uses_necessitation() {
        let e = corpus_entry("nc-from-idp").unwrap();
        assert_eq!(e.derivation.lines.len(), 4);
        assert!(matches!(e.derivation.lines[2].justification, Justification::Nec(2, ..)));
    }
}
