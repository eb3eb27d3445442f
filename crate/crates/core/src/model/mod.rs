//! Finite Kripke models with one accessibility relation per proof modality
//! and a data base per agent and state.
//!
//! The truth of `a knows M` is never stored: it is computed from the
//! agent's base at that state through the configured [`Closure`].

mod enumerate;
mod filtration;
mod format;
pub(crate) mod program;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::interface::{InterfaceReport, Property};
use crate::knowledge::{Closure, DataBase};
use crate::syntax::{AgentName, Formula, MessageTerm, Modality, PropName};

pub use enumerate::{enumerate_models, EnumerationSpec, ModelStream};
pub(crate) use enumerate::{search, SearchSpace};
pub use filtration::{extended_closure, filtrate, minimal_filtration_edges, ClassEdges, Filtration};
pub use format::{parse_model, render_model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("no transition entry for {0}")]
    MissingModality(Modality),
    #[error("no valuation entry for proposition {0}")]
    MissingProp(PropName),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("model line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("model violates the accessibility interface:\n{0}")]
    Interface(InterfaceReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    states: Vec<String>,
    /// Successor lists, indexed by state.
    trans: BTreeMap<Modality, Vec<Vec<usize>>>,
    /// Nonempty bases only; a missing entry is the empty base.
    bases: BTreeMap<(AgentName, usize), DataBase>,
    props: BTreeMap<PropName, BTreeSet<usize>>,
    closure: Closure,
}

impl FiniteModel {
    /// A model with named states and no transitions, bases or propositions.
    pub fn new(states: Vec<String>) -> Self {
        FiniteModel {
            states,
            trans: BTreeMap::new(),
            bases: BTreeMap::new(),
            props: BTreeMap::new(),
            closure: Closure::DataMining,
        }
    }

    /// States named `s0 .. s{n-1}`.
    pub fn with_states(n: usize) -> Self {
        FiniteModel::new((0..n).map(|i| format!("s{i}")).collect())
    }

    pub fn with_closure(mut self, closure: Closure) -> Self {
        self.closure = closure;
        self
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn state_index(&self, name: &str) -> Result<usize, ModelError> {
        self.states.iter().position(|n| n == name).ok_or_else(|| ModelError::UnknownState(name.to_string()))
    }

    fn check_state(&self, s: usize) -> Result<(), ModelError> {
        if s < self.states.len() {
            Ok(())
        } else {
            Err(ModelError::StateOutOfRange(s))
        }
    }

    /// Registers a modality with no edges yet.
    pub fn declare_modality(&mut self, modality: Modality) {
        let n = self.states.len();
        self.trans.entry(modality).or_insert_with(|| vec![Vec::new(); n]);
    }

    pub fn add_edge(&mut self, modality: &Modality, from: usize, to: usize) -> Result<(), ModelError> {
        self.check_state(from)?;
        self.check_state(to)?;
        self.declare_modality(modality.clone());
        let succ = &mut self.trans.get_mut(modality).expect("declared")[from];
        if let Err(pos) = succ.binary_search(&to) {
            succ.insert(pos, to);
        }
        Ok(())
    }

    pub fn modalities(&self) -> impl Iterator<Item = &Modality> {
        self.trans.keys()
    }

    pub fn successors(&self, modality: &Modality, s: usize) -> Result<&[usize], ModelError> {
        self.check_state(s)?;
        let rel = self.trans.get(modality).ok_or_else(|| ModelError::MissingModality(modality.clone()))?;
        Ok(&rel[s])
    }

    pub fn set_base(&mut self, agent: AgentName, s: usize, base: DataBase) -> Result<(), ModelError> {
        self.check_state(s)?;
        if base.is_empty() {
            self.bases.remove(&(agent, s));
        } else {
            self.bases.insert((agent, s), base);
        }
        Ok(())
    }

    pub fn base(&self, agent: &AgentName, s: usize) -> DataBase {
        self.bases.get(&(agent.clone(), s)).cloned().unwrap_or_default()
    }

    pub(crate) fn nonempty_bases(&self) -> impl Iterator<Item = (&(AgentName, usize), &DataBase)> {
        self.bases.iter()
    }

    /// Declares a proposition, false everywhere.
    pub fn declare_prop(&mut self, prop: PropName) {
        self.props.entry(prop).or_default();
    }

    pub fn set_prop(&mut self, prop: PropName, s: usize, value: bool) -> Result<(), ModelError> {
        self.check_state(s)?;
        let set = self.props.entry(prop).or_default();
        if value {
            set.insert(s);
        } else {
            set.remove(&s);
        }
        Ok(())
    }

    pub fn props(&self) -> impl Iterator<Item = (&PropName, &BTreeSet<usize>)> {
        self.props.iter()
    }

    pub fn knows(&self, agent: &AgentName, s: usize, msg: &MessageTerm) -> bool {
        self.closure.derivable(agent, &self.base(agent, s), msg)
    }

    /// Errors if `f` mentions a proposition or modality the model lacks.
    pub fn check_vocabulary(&self, f: &Formula) -> Result<(), ModelError> {
        if let Some(p) = f.props().into_iter().find(|p| !self.props.contains_key(p)) {
            return Err(ModelError::MissingProp(p));
        }
        if let Some(m) = f.modalities().into_iter().find(|m| !self.trans.contains_key(m)) {
            return Err(ModelError::MissingModality(m));
        }
        Ok(())
    }

    /// Satisfaction at a state. The modal clause quantifies over all successors.
    pub fn eval(&self, s: usize, f: &Formula) -> Result<bool, ModelError> {
        self.check_state(s)?;
        self.check_vocabulary(f)?;
        Ok(self.eval_unchecked(s, f))
    }

    fn eval_unchecked(&self, s: usize, f: &Formula) -> bool {
        match f {
            Formula::Prop(p) => self.props[p].contains(&s),
            Formula::Knows(a, m) => self.knows(a, s, m),
            Formula::Not(x) => !self.eval_unchecked(s, x),
            Formula::And(l, r) => self.eval_unchecked(s, l) && self.eval_unchecked(s, r),
            Formula::Proves(m, a, body) => {
                let key = Modality::new(m.clone(), a.clone());
                self.trans[&key][s].iter().all(|&t| self.eval_unchecked(t, body))
            }
        }
    }

    pub fn global_truth(&self, f: &Formula) -> Result<bool, ModelError> {
        self.check_vocabulary(f)?;
        Ok((0..self.len()).all(|s| self.eval_unchecked(s, f)))
    }

    /// Checks the four interface properties for each listed modality. A
    /// modality without a transition entry has no successors anywhere.
    pub fn validate_interface<'a>(&self, signature: impl IntoIterator<Item = &'a Modality>) -> InterfaceReport {
        let mut report = InterfaceReport::default();
        for modality in signature {
            let rel = self.trans.get(modality);
            for s in 0..self.len() {
                report.checked += 1;
                let name = &self.states[s];
                let succ: &[usize] = rel.map(|r| r[s].as_slice()).unwrap_or(&[]);
                if succ.is_empty() {
                    let detail = if rel.is_none() { "no transition entry" } else { "no successor" };
                    report.push(Property::Seriality, modality, name.clone(), detail.into());
                }
                if succ.len() > 1 {
                    let names: Vec<&str> = succ.iter().map(|&t| self.states[t].as_str()).collect();
                    report.push(Property::Functionality, modality, name.clone(), format!("successors {}", names.join(", ")));
                }
                if self.knows(&modality.agent, s, &modality.msg) && succ != [s] {
                    report.push(
                        Property::ConditionalReflexivity,
                        modality,
                        name.clone(),
                        format!("{} knows {} but {name} is not its only successor", modality.agent, modality.msg),
                    );
                }
                for &t in succ {
                    if !self.knows(&modality.agent, t, &modality.msg) {
                        report.push(
                            Property::EpistemicImage,
                            modality,
                            name.clone(),
                            format!("{} does not know {} at successor {}", modality.agent, modality.msg, self.states[t]),
                        );
                    }
                }
            }
        }
        report
    }

    /// Interface check over every modality with a transition entry.
    pub fn validate(&self) -> InterfaceReport {
        let sig: Vec<Modality> = self.trans.keys().cloned().collect();
        self.validate_interface(&sig)
    }

    /// The unique successor on an interface-valid model.
    pub(crate) fn succ(&self, modality: &Modality, s: usize) -> usize {
        self.trans[modality][s][0]
    }
}
