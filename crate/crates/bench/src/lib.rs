//! Fixtures shared by the benchmarks.

use ldiip_core::knowledge::DataBase;
use ldiip_core::model::parse_model;
use ldiip_core::{parse_formula, AgentName, FiniteModel, Formula, MessageTerm, Universe};

pub fn formula(text: &str) -> Formula {
    parse_formula(text, &Universe::default()).expect("fixture parses")
}

/// A base holding nested pairs and a signature by `b`, seen by `a`.
pub fn nested_base(depth: usize) -> (AgentName, DataBase, MessageTerm) {
    let a = AgentName::new("a").unwrap();
    let b = AgentName::new("b").unwrap();
    let mut term = MessageTerm::atom(AgentName::new("m0").unwrap());
    for i in 1..=depth {
        let leaf = MessageTerm::atom(AgentName::new(&format!("m{i}")).unwrap());
        term = MessageTerm::pair(term, MessageTerm::sig(leaf, b.clone()));
    }
    let goal = MessageTerm::pair(MessageTerm::atom(a.clone()), term.clone());
    (a, [term].into_iter().collect(), goal)
}

/// A four-state model over `[m]a`, `[n]b` and `P`, `Q`.
pub fn sample_model() -> FiniteModel {
    parse_model(
        "STATES\ns0 s1 s2 s3\nTRANS\n\
         m a : s0 -> s1\nm a : s1 -> s1\nm a : s2 -> s3\nm a : s3 -> s3\n\
         n b : s0 -> s2\nn b : s1 -> s2\nn b : s2 -> s2\nn b : s3 -> s2\n\
         BASES\na @ s1 : m\na @ s3 : m\nb @ s2 : n\nVAL\nP : s1 s2\nQ : s3\n",
    )
    .expect("fixture parses")
}
