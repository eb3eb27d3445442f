//! Quotienting a model by agreement on a formula's subformulas.
//!
//! States are grouped by their truth values on the subformula closure of
//! `f` extended with `a knows M` for every `[M]a` in `f`. Each class takes
//! its lowest-numbered member as representative, and the class inherits
//! that member's bases, propositions and successors. The result is
//! serial and functional by construction, and it is a sub-relation of the
//! minimal filtration over the same classes.
//!
//! The extra knowledge atoms are needed: the minimal filtration over the
//! plain closure can give one class two successors, and without them a
//! successor class need not know the modality's message.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{FiniteModel, ModelError};
use crate::syntax::{Formula, Modality};

#[derive(Clone, Debug)]
pub struct Filtration {
    pub model: FiniteModel,
    /// Class of each original state.
    pub class_of: Vec<usize>,
    /// The formulas classes agree on.
    pub gamma: Vec<Formula>,
}

/// Subformula closure of `f` plus `a knows M` for each `[M]a` in `f`.
pub fn extended_closure(f: &Formula) -> Vec<Formula> {
    let mut gamma: BTreeSet<Formula> = f.subformula_closure();
    for m in f.modalities() {
        gamma.insert(Formula::knows(m.agent, m.msg));
    }
    gamma.into_iter().collect()
}

fn classes(m: &FiniteModel, gamma: &[Formula]) -> Result<(Vec<usize>, Vec<usize>), ModelError> {
    let mut by_vector: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(m.len());
    let mut reps = Vec::new();
    for s in 0..m.len() {
        let v = gamma.iter().map(|g| m.eval(s, g)).collect::<Result<Vec<bool>, _>>()?;
        let next = reps.len();
        let c = *by_vector.entry(v).or_insert(next);
        if c == next {
            reps.push(s);
        }
        class_of.push(c);
    }
    Ok((class_of, reps))
}

/// Filtrates `m` through `f`. Every formula of the extended closure keeps
/// its truth value: `m, s ⊨ γ` iff `filtered, class_of[s] ⊨ γ`.
pub fn filtrate(m: &FiniteModel, f: &Formula) -> Result<Filtration, ModelError> {
    let signature = f.modalities();
    let report = m.validate_interface(&signature);
    if !report.is_valid() {
        return Err(ModelError::Interface(report));
    }
    let gamma = extended_closure(f);
    let (class_of, reps) = classes(m, &gamma)?;
    let mut out = FiniteModel::new(reps.iter().map(|&r| m.state_name(r).to_string()).collect()).with_closure(m.closure());
    for (c, &r) in reps.iter().enumerate() {
        for ((agent, s), base) in m.nonempty_bases() {
            if *s == r {
                out.set_base(agent.clone(), c, base.clone())?;
            }
        }
    }
    for (p, set) in m.props() {
        out.declare_prop(p.clone());
        for (c, &r) in reps.iter().enumerate() {
            if set.contains(&r) {
                out.set_prop(p.clone(), c, true)?;
            }
        }
    }
    for modality in &signature {
        for (c, &r) in reps.iter().enumerate() {
            out.add_edge(modality, c, class_of[m.succ(modality, r)])?;
        }
    }
    Ok(Filtration { model: out, class_of, gamma })
}

/// Class-level edges per modality.
pub type ClassEdges = BTreeMap<Modality, BTreeSet<(usize, usize)>>;

/// Edges of the minimal filtration of `m` over the classes induced by
/// `gamma`: `[s] -> [t]` whenever some member of `[s]` has a successor in `[t]`.
pub fn minimal_filtration_edges(
    m: &FiniteModel,
    gamma: &[Formula],
    signature: &BTreeSet<Modality>,
) -> Result<(Vec<usize>, ClassEdges), ModelError> {
    let (class_of, _) = classes(m, gamma)?;
    let mut edges = BTreeMap::new();
    for modality in signature {
        let set: &mut BTreeSet<(usize, usize)> = edges.entry(modality.clone()).or_default();
        for s in 0..m.len() {
            for &t in m.successors(modality, s)? {
                set.insert((class_of[s], class_of[t]));
            }
        }
    }
    Ok((class_of, edges))
}
