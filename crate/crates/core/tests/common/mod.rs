//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ldiip_core::knowledge::DataBase;
use ldiip_core::syntax::{AgentName, Formula, MessageTerm, Modality, PropName};
use ldiip_core::FiniteModel;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn agent(s: &str) -> AgentName {
    AgentName::new(s).unwrap()
}

pub fn atom(s: &str) -> MessageTerm {
    MessageTerm::atom(agent(s))
}

pub fn prop(s: &str) -> PropName {
    PropName::new(s).unwrap()
}

/// The vocabulary random formulas and models are drawn from.
#[derive(Clone, Debug)]
pub struct Vocab {
    pub agents: Vec<AgentName>,
    pub props: Vec<PropName>,
    /// Messages used in modalities and knowledge atoms.
    pub messages: Vec<MessageTerm>,
}

impl Vocab {
    pub fn two_agents() -> Self {
        Vocab {
            agents: vec![agent("a"), agent("b")],
            props: vec![prop("P"), prop("Q")],
            messages: vec![
                atom("m"),
                MessageTerm::pair(atom("m"), atom("n")),
                MessageTerm::sig(atom("n"), agent("b")),
            ],
        }
    }

    pub fn single_agent() -> Self {
        Vocab { agents: vec![agent("a")], props: vec![prop("P")], messages: vec![atom("m"), atom("n")] }
    }

    pub fn modalities(&self) -> Vec<Modality> {
        let mut out = Vec::new();
        for m in &self.messages {
            for a in &self.agents {
                out.push(Modality::new(m.clone(), a.clone()));
            }
        }
        out
    }
}

/// A random formula of modal and boolean depth at most `depth`.
pub fn random_formula(rng: &mut impl Rng, v: &Vocab, depth: usize) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        if rng.gen_bool(0.7) {
            Formula::prop(v.props.choose(rng).unwrap().clone())
        } else {
            Formula::knows(v.agents.choose(rng).unwrap().clone(), v.messages.choose(rng).unwrap().clone())
        }
    } else {
        match rng.gen_range(0..3) {
            0 => random_formula(rng, v, depth - 1).not(),
            1 => random_formula(rng, v, depth - 1).and(random_formula(rng, v, depth - 1)),
            _ => Formula::proves(
                v.messages.choose(rng).unwrap().clone(),
                v.agents.choose(rng).unwrap().clone(),
                random_formula(rng, v, depth - 1),
            ),
        }
    }
}

/// All subterms of the vocabulary's messages plus agent atoms: the pool
/// random bases are drawn from.
pub fn message_pool(v: &Vocab) -> Vec<MessageTerm> {
    let mut pool: BTreeSet<MessageTerm> = BTreeSet::new();
    for m in &v.messages {
        pool.extend(m.subterms());
    }
    pool.extend(v.agents.iter().cloned().map(MessageTerm::atom));
    pool.into_iter().collect()
}

/// A random model that is interface-valid for every modality of `v`.
pub fn random_model(rng: &mut impl Rng, v: &Vocab, states: usize) -> FiniteModel {
    let pool = message_pool(v);
    let mut bases: Vec<Vec<DataBase>> = (0..states)
        .map(|_| {
            v.agents.iter().map(|_| pool.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect()).collect()
        })
        .collect();
    let probe = |bases: &Vec<Vec<DataBase>>| {
        let mut m = FiniteModel::with_states(states);
        for (s, row) in bases.iter().enumerate() {
            for (i, b) in row.iter().enumerate() {
                m.set_base(v.agents[i].clone(), s, b.clone()).unwrap();
            }
        }
        m
    };
    // Every modality needs a state where its agent knows its message.
    for mo in v.modalities() {
        let m = probe(&bases);
        if !(0..states).any(|s| m.knows(&mo.agent, s, &mo.msg)) {
            let s = rng.gen_range(0..states);
            let i = v.agents.iter().position(|a| *a == mo.agent).unwrap();
            bases[s][i].insert(mo.msg.clone());
        }
    }
    let mut m = probe(&bases);
    for mo in v.modalities() {
        let knowers: Vec<usize> = (0..states).filter(|&s| m.knows(&mo.agent, s, &mo.msg)).collect();
        for s in 0..states {
            let t = if knowers.contains(&s) { s } else { *knowers.choose(rng).unwrap() };
            m.add_edge(&mo, s, t).unwrap();
        }
    }
    for p in &v.props {
        m.declare_prop(p.clone());
        for s in 0..states {
            m.set_prop(p.clone(), s, rng.gen_bool(0.5)).unwrap();
        }
    }
    m
}
