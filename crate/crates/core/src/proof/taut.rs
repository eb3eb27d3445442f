//! Tautology checking on propositional skeletons.
//!
//! Atoms, knowledge atoms and proof-modality subformulas are opaque letters;
//! identical subformulas share a letter. The truth table is evaluated 64
//! rows at a time.

use std::collections::HashMap;

use crate::syntax::Formula;

/// Skeletons with more letters than this are rejected rather than checked.
pub const MAX_LETTERS: usize = 24;

enum Op {
    Letter(usize),
    Not(usize),
    And(usize, usize),
}

struct Skeleton {
    ops: Vec<Op>,
    letters: HashMap<Formula, usize>,
}

impl Skeleton {
    fn add(&mut self, f: &Formula) -> usize {
        let op = match f {
            Formula::Not(x) => Op::Not(self.add(x)),
            Formula::And(l, r) => {
                let l = self.add(l);
                Op::And(l, self.add(r))
            }
            _ => {
                let next = self.letters.len();
                Op::Letter(*self.letters.entry(f.clone()).or_insert(next))
            }
        };
        self.ops.push(op);
        self.ops.len() - 1
    }
}

// Column `i` of the low 6 letters within one 64-row block.
const LOW: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// `Some(true)` if the skeleton of `f` is a tautology, `None` if it has
/// more than [`MAX_LETTERS`] letters.
pub fn check_tautology(f: &Formula) -> Option<bool> {
    let mut sk = Skeleton { ops: Vec::new(), letters: HashMap::new() };
    let root = sk.add(f);
    let k = sk.letters.len();
    if k > MAX_LETTERS {
        return None;
    }
    let rows = if k < 6 { (1u64 << (1u64 << k)) - 1 } else { u64::MAX };
    let blocks = 1u64 << k.saturating_sub(6);
    let mut vals = vec![0u64; sk.ops.len()];
    for block in 0..blocks {
        for (i, op) in sk.ops.iter().enumerate() {
            vals[i] = match *op {
                Op::Letter(l) if l < 6 => LOW[l],
                Op::Letter(l) => {
                    if block >> (l - 6) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    }
                }
                Op::Not(x) => !vals[x],
                Op::And(l, r) => vals[l] & vals[r],
            };
        }
        if vals[root] & rows != rows {
            return Some(false);
        }
    }
    Some(true)
}

pub fn is_tautology_instance(f: &Formula) -> bool {
    check_tautology(f) == Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::build::*;

    #[test]
    fn examples() {
        let p = prop("P");
        assert!(is_tautology_instance(&p.clone().implies(p.clone())));
        let bp = proves(atom("m"), "a", p.clone());
        assert!(is_tautology_instance(&bp.clone().or(bp.clone().not())));
        let bnp = proves(atom("m"), "a", p.clone().not());
        assert!(!is_tautology_instance(&bp.or(bnp)));
        assert!(!is_tautology_instance(&p));
    }

    #[test]
    fn many_letters() {
        // (P1 & ... & P8) -> P8 spans several 64-row blocks.
        let ps: Vec<Formula> = (1..=8).map(|i| prop(&format!("P{i}"))).collect();
        let conj = ps.iter().skip(1).fold(ps[0].clone(), |acc, p| acc.and(p.clone()));
        assert!(is_tautology_instance(&conj.clone().implies(ps[7].clone())));
        assert!(!is_tautology_instance(&ps[7].clone().implies(conj)));
    }

    #[test]
    fn falsity_is_only_a_letter() {
        let t = crate::syntax::Formula::truth(&agent("a"));
        assert!(!is_tautology_instance(&t.clone().not().implies(prop("P"))));
        assert!(is_tautology_instance(&t.clone().implies(t.clone().not().implies(prop("P")))));
    }
}
