//! Formulas compiled to a flat node list and evaluated on up to 64 states
//! at once, one bit per state.

use std::collections::HashMap;

use crate::syntax::{AgentName, Formula, MessageTerm, Modality, PropName};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Prop(usize),
    Know(usize),
    Not(usize),
    And(usize, usize),
    Box(usize, usize),
}

/// Hash-consed subformulas in children-first order.
#[derive(Clone, Debug)]
pub(crate) struct Program {
    pub nodes: Vec<Node>,
    pub formulas: Vec<Formula>,
    pub props: Vec<PropName>,
    pub katoms: Vec<(AgentName, MessageTerm)>,
    pub modalities: Vec<Modality>,
    index: HashMap<Formula, usize>,
}

impl Program {
    pub fn new() -> Self {
        Program {
            nodes: Vec::new(),
            formulas: Vec::new(),
            props: Vec::new(),
            katoms: Vec::new(),
            modalities: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn compile(f: &Formula) -> (Self, usize) {
        let mut p = Program::new();
        let root = p.add(f);
        (p, root)
    }

    fn intern<T: PartialEq + Clone>(list: &mut Vec<T>, x: &T) -> usize {
        match list.iter().position(|y| y == x) {
            Some(i) => i,
            None => {
                list.push(x.clone());
                list.len() - 1
            }
        }
    }

    pub fn modality_index(&mut self, m: &Modality) -> usize {
        Self::intern(&mut self.modalities, m)
    }

    pub fn katom_index(&mut self, a: &AgentName, m: &MessageTerm) -> usize {
        Self::intern(&mut self.katoms, &(a.clone(), m.clone()))
    }

    pub fn prop_index(&mut self, p: &PropName) -> usize {
        Self::intern(&mut self.props, p)
    }

    /// Adds `f` and its subformulas, returning the node of `f`.
    pub fn add(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.index.get(f) {
            return i;
        }
        let node = match f {
            Formula::Prop(p) => Node::Prop(self.prop_index(p)),
            Formula::Knows(a, m) => Node::Know(self.katom_index(a, m)),
            Formula::Not(x) => Node::Not(self.add(x)),
            Formula::And(l, r) => {
                let l = self.add(l);
                Node::And(l, self.add(r))
            }
            Formula::Proves(m, a, body) => {
                let b = self.add(body);
                Node::Box(self.modality_index(&Modality::new(m.clone(), a.clone())), b)
            }
        };
        self.nodes.push(node);
        self.formulas.push(f.clone());
        self.index.insert(f.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    /// Truth masks of every node. `succ[μ][s]` is the successor of `s`.
    pub fn eval(&self, n: usize, props: &[u64], know: &[u64], succ: &[Vec<usize>], out: &mut Vec<u64>) {
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        out.clear();
        for node in &self.nodes {
            let v = match *node {
                Node::Prop(i) => props[i],
                Node::Know(i) => know[i],
                Node::Not(x) => !out[x] & all,
                Node::And(l, r) => out[l] & out[r],
                Node::Box(mu, b) => {
                    let body = out[b];
                    let mut v = 0u64;
                    for (s, &t) in succ[mu].iter().enumerate().take(n) {
                        v |= ((body >> t) & 1) << s;
                    }
                    v
                }
            };
            out.push(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::build::*;

    #[test]
    fn shares_subformulas_and_evaluates() {
        let p = prop("P");
        let f = proves(atom("m"), "a", p.clone()).and(p.clone().not());
        let (prog, root) = Program::compile(&f);
        assert_eq!(prog.nodes.len(), 4);
        // s0 -> s1 -> s1, P only at s1.
        let mut out = Vec::new();
        prog.eval(2, &[0b10], &[], &[vec![1, 1]], &mut out);
        assert_eq!(out[root], 0b01);
    }
}
