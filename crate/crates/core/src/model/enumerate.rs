//! Exhaustive enumeration of interface-valid models, fewest states first.
//!
//! Within one state count the order is: knowledge profiles (state 0 most
//! significant), then proposition masks, then successor functions. A
//! knowledge profile is the truth vector of the relevant `a knows M` atoms
//! for one agent; each profile is realized by the first base, in order of
//! size and then lexicographically, drawn from the message universe.
//!
//! Restricting bases to subsets of the universe loses nothing: for any base
//! `B`, the base `cl(B) ∩ U` induces the same truth on every message of `U`,
//! because the closure is extensive, monotone and idempotent.

use std::collections::BTreeSet;

use super::program::Program;
use super::FiniteModel;
use crate::knowledge::{Closure, DataBase};
use crate::syntax::{AgentName, Formula, MessageTerm, Modality, PropName};

/// Largest message universe whose subsets are searched for profiles.
pub const MAX_UNIVERSE: usize = 20;
/// Most states a search may use (one bit per state).
pub const MAX_STATES: usize = 64;

/// What to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub signature: BTreeSet<Modality>,
    pub props: BTreeSet<PropName>,
    pub knowledge: BTreeSet<(AgentName, MessageTerm)>,
    pub max_states: usize,
    pub closure: Closure,
}

impl EnumerationSpec {
    /// The vocabulary of `f`.
    pub fn for_formula(f: &Formula, max_states: usize) -> Self {
        EnumerationSpec {
            signature: f.modalities(),
            props: f.props(),
            knowledge: f.knowledge_atoms(),
            max_states,
            closure: Closure::DataMining,
        }
    }
}

#[derive(Clone, Debug)]
struct AgentProfiles {
    agent: AgentName,
    /// Indices into the space's knowledge atoms.
    atoms: Vec<usize>,
    /// (truth bits over `atoms`, realizing base)
    profiles: Vec<(u64, DataBase)>,
}

/// The finite search space for one vocabulary.
#[derive(Clone, Debug)]
pub(crate) struct SearchSpace {
    pub props: Vec<PropName>,
    pub katoms: Vec<(AgentName, MessageTerm)>,
    pub modalities: Vec<Modality>,
    /// Knowledge atom of each modality's own message.
    pub mod_katom: Vec<usize>,
    agents: Vec<AgentProfiles>,
    /// Knowledge-atom truth bits of each combined profile.
    pub combined: Vec<u64>,
    pub closure: Closure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SpaceTooLarge(pub String);

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// Visits index subsets by size, then lexicographically, until `visit` says stop.
fn subsets_by_size(n: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if !visit(&combo) {
                return;
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
}

impl SearchSpace {
    pub fn new(
        props: Vec<PropName>,
        mut katoms: Vec<(AgentName, MessageTerm)>,
        modalities: Vec<Modality>,
        closure: Closure,
    ) -> Result<Self, SpaceTooLarge> {
        let mut mod_katom = Vec::new();
        for m in &modalities {
            let key = (m.agent.clone(), m.msg.clone());
            let i = match katoms.iter().position(|k| *k == key) {
                Some(i) => i,
                None => {
                    katoms.push(key);
                    katoms.len() - 1
                }
            };
            mod_katom.push(i);
        }
        if katoms.len() > 64 {
            return Err(SpaceTooLarge(format!("{} knowledge atoms (limit 64)", katoms.len())));
        }
        let mut universe: BTreeSet<MessageTerm> = BTreeSet::new();
        for (a, m) in &katoms {
            universe.extend(m.subterms());
            universe.insert(MessageTerm::Atom(a.clone()));
            universe.extend(m.signers().into_iter().map(MessageTerm::Atom));
        }
        let universe: Vec<MessageTerm> = universe.into_iter().collect();
        let knowers: BTreeSet<AgentName> = katoms.iter().map(|(a, _)| a.clone()).collect();
        let mut agents = Vec::new();
        for agent in knowers {
            let atoms: Vec<usize> = (0..katoms.len()).filter(|&i| katoms[i].0 == agent).collect();
            let target = 1usize.checked_shl(atoms.len() as u32).unwrap_or(usize::MAX);
            if universe.len() > MAX_UNIVERSE {
                return Err(SpaceTooLarge(format!("message universe of {} terms (limit {MAX_UNIVERSE})", universe.len())));
            }
            let mut profiles: Vec<(u64, DataBase)> = Vec::new();
            subsets_by_size(universe.len(), |combo| {
                let base: DataBase = combo.iter().map(|&i| universe[i].clone()).collect();
                let sat = closure.saturate(&agent, &base);
                let mut bits = 0u64;
                for (j, &k) in atoms.iter().enumerate() {
                    if sat.derives(&katoms[k].1) {
                        bits |= 1 << j;
                    }
                }
                if !profiles.iter().any(|(b, _)| *b == bits) {
                    profiles.push((bits, base));
                }
                profiles.len() < target
            });
            agents.push(AgentProfiles { agent, atoms, profiles });
        }
        let mut combined = vec![0u64];
        for ap in &agents {
            let mut next = Vec::with_capacity(combined.len() * ap.profiles.len());
            for &c in &combined {
                for (bits, _) in &ap.profiles {
                    let mut v = c;
                    for (j, &k) in ap.atoms.iter().enumerate() {
                        if bits >> j & 1 == 1 {
                            v |= 1 << k;
                        }
                    }
                    next.push(v);
                }
            }
            combined = next;
        }
        Ok(SearchSpace { props, katoms, modalities, mod_katom, agents, combined, closure })
    }

    pub fn for_program(p: &Program, closure: Closure) -> Result<Self, SpaceTooLarge> {
        SearchSpace::new(p.props.clone(), p.katoms.clone(), p.modalities.clone(), closure)
    }

    pub fn profile_count(&self) -> usize {
        self.combined.len()
    }

    pub fn bases_of(&self, combined: usize) -> Vec<(AgentName, DataBase)> {
        let mut out = Vec::new();
        let mut rest = combined;
        for ap in self.agents.iter().rev() {
            let k = ap.profiles.len();
            out.push((ap.agent.clone(), ap.profiles[rest % k].1.clone()));
            rest /= k;
        }
        out.reverse();
        out
    }
}

/// Position in the enumeration of models with a fixed number of states.
#[derive(Clone, Debug)]
pub(crate) struct Cursor {
    pub n: usize,
    pub assign: Vec<usize>,
    pub prop_mask: u64,
    pub know: Vec<u64>,
    options: Vec<Vec<usize>>,
    choice: Vec<usize>,
    pub succ: Vec<Vec<usize>>,
}

impl Cursor {
    /// First model with `n` states, if any.
    fn first(space: &SearchSpace, n: usize) -> Option<Cursor> {
        if space.props.len() * n > 63 {
            return None;
        }
        let mut c = Cursor {
            n,
            assign: vec![0; n],
            prop_mask: 0,
            know: Vec::new(),
            options: Vec::new(),
            choice: Vec::new(),
            succ: vec![vec![0; n]; space.modalities.len()],
        };
        if c.load_profiles(space) || c.next_profiles(space) {
            Some(c)
        } else {
            None
        }
    }

    // Derives knowledge masks and successor options; false if some
    // modality has no state to point to.
    fn load_profiles(&mut self, space: &SearchSpace) -> bool {
        self.know = vec![0; space.katoms.len()];
        for (s, &c) in self.assign.iter().enumerate() {
            let bits = space.combined[c];
            for (k, mask) in self.know.iter_mut().enumerate() {
                *mask |= (bits >> k & 1) << s;
            }
        }
        self.options.clear();
        for &k in &space.mod_katom {
            let knowers: Vec<usize> = (0..self.n).filter(|&s| self.know[k] >> s & 1 == 1).collect();
            if knowers.is_empty() {
                return false;
            }
            for s in 0..self.n {
                self.options.push(if self.know[k] >> s & 1 == 1 { vec![s] } else { knowers.clone() });
            }
        }
        self.choice = vec![0; self.options.len()];
        self.write_succ();
        true
    }

    fn write_succ(&mut self) {
        for (i, &c) in self.choice.iter().enumerate() {
            self.succ[i / self.n][i % self.n] = self.options[i][c];
        }
    }

    fn next_profiles(&mut self, space: &SearchSpace) -> bool {
        let k = space.combined.len();
        loop {
            let mut i = self.n;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                self.assign[i] += 1;
                if self.assign[i] < k {
                    break;
                }
                self.assign[i] = 0;
            }
            if self.load_profiles(space) {
                self.prop_mask = 0;
                return true;
            }
        }
    }

    fn next_succ(&mut self) -> bool {
        let mut i = self.choice.len();
        while i > 0 {
            i -= 1;
            self.choice[i] += 1;
            if self.choice[i] < self.options[i].len() {
                self.write_succ();
                return true;
            }
            self.choice[i] = 0;
        }
        self.write_succ();
        false
    }

    /// Advances to the next model with the same state count.
    fn advance(&mut self, space: &SearchSpace) -> bool {
        if self.next_succ() {
            return true;
        }
        let limit = 1u64 << (space.props.len() * self.n);
        self.prop_mask += 1;
        if self.prop_mask < limit {
            return true;
        }
        self.next_profiles(space)
    }

    pub fn prop_masks(&self, count: usize) -> Vec<u64> {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        (0..count).map(|i| (self.prop_mask >> (i * self.n)) & full).collect()
    }

    pub fn to_model(&self, space: &SearchSpace) -> FiniteModel {
        let mut m = FiniteModel::with_states(self.n).with_closure(space.closure);
        for (s, &c) in self.assign.iter().enumerate() {
            for (agent, base) in space.bases_of(c) {
                m.set_base(agent, s, base).expect("state in range");
            }
        }
        for (i, p) in space.props.iter().enumerate() {
            m.declare_prop(p.clone());
            for s in 0..self.n {
                if (self.prop_mask >> (i * self.n + s)) & 1 == 1 {
                    m.set_prop(p.clone(), s, true).expect("state in range");
                }
            }
        }
        for (mu, modality) in space.modalities.iter().enumerate() {
            for s in 0..self.n {
                m.add_edge(modality, s, self.succ[mu][s]).expect("state in range");
            }
        }
        m
    }
}

/// A satisfying point found by [`search`].
#[derive(Clone, Debug)]
pub(crate) struct Found {
    pub model: FiniteModel,
    pub state: usize,
}

/// First model, in enumeration order with at most `max_states` states, in
/// which the program's `root` node holds somewhere.
pub(crate) fn search(space: &SearchSpace, prog: &Program, root: usize, max_states: usize) -> Option<Found> {
    let mut out = Vec::new();
    for n in 1..=max_states.min(MAX_STATES) {
        let Some(mut cur) = Cursor::first(space, n) else { continue };
        loop {
            let props = cur.prop_masks(space.props.len());
            prog.eval(n, &props, &cur.know, &cur.succ, &mut out);
            if out[root] != 0 {
                return Some(Found { model: cur.to_model(space), state: out[root].trailing_zeros() as usize });
            }
            if !cur.advance(space) {
                break;
            }
        }
    }
    None
}

/// Lazy stream over every interface-valid model of a vocabulary.
pub struct ModelStream {
    space: Option<SearchSpace>,
    cursor: Option<Cursor>,
    max_states: usize,
    next_n: usize,
}

impl Iterator for ModelStream {
    type Item = FiniteModel;

    fn next(&mut self) -> Option<FiniteModel> {
        let space = self.space.as_ref()?;
        loop {
            if let Some(cur) = &mut self.cursor {
                let model = cur.to_model(space);
                if !cur.advance(space) {
                    self.cursor = None;
                }
                return Some(model);
            }
            if self.next_n > self.max_states.min(MAX_STATES) {
                return None;
            }
            self.cursor = Cursor::first(space, self.next_n);
            self.next_n += 1;
        }
    }
}

/// Every interface-valid model with 1 to `spec.max_states` states.
///
/// Bases that induce the same truth on the vocabulary's knowledge atoms
/// (including `a knows M` for each `[M]a` in the signature) are produced
/// once. Vocabularies too large to enumerate give an empty stream.
pub fn enumerate_models(spec: &EnumerationSpec) -> ModelStream {
    let space = SearchSpace::new(
        spec.props.iter().cloned().collect(),
        spec.knowledge.iter().cloned().collect(),
        spec.signature.iter().cloned().collect(),
        spec.closure,
    )
    .ok();
    ModelStream { space, cursor: None, max_states: spec.max_states, next_n: 1 }
}
