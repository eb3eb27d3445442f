//! The data-mining closure `cl_a` and decidable membership in it.
//!
//! Under the default [`Closure::DataMining`] strategy an agent's derivable
//! messages are the least superset of its data base plus its own name that
//! is closed under pairing, unpairing, signing with the agent's own key and
//! opening any signature into the pair `(M, signer)`.
//!
//! Membership is decided in two phases: saturate the base under the
//! decomposing rules ([`Closure::analyze`]), then check the goal top-down
//! against the composing rules. Composition never enables new decomposition
//! (taking apart a pair or signature built by the agent yields parts it
//! already had), so the two phases are complete.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{AgentName, MessageTerm};

/// A finite set of messages an agent holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DataBase(BTreeSet<MessageTerm>);

impl DataBase {
    pub fn new() -> Self {
        DataBase(BTreeSet::new())
    }

    pub fn insert(&mut self, m: MessageTerm) -> bool {
        self.0.insert(m)
    }

    pub fn contains(&self, m: &MessageTerm) -> bool {
        self.0.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MessageTerm> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &DataBase) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &DataBase) -> DataBase {
        DataBase(self.0.union(&other.0).cloned().collect())
    }
}

impl FromIterator<MessageTerm> for DataBase {
    fn from_iter<I: IntoIterator<Item = MessageTerm>>(iter: I) -> Self {
        DataBase(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a DataBase {
    type Item = &'a MessageTerm;
    type IntoIter = std::collections::btree_set::Iter<'a, MessageTerm>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for DataBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Which data-mining operator agents apply to their raw messages.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Closure {
    /// Pairing, unpairing, personal signing and universal signature opening.
    #[default]
    DataMining,
    /// No data mining: an agent derives its own name and what it holds.
    Identity,
}

impl Closure {
    pub fn name(self) -> &'static str {
        match self {
            Closure::DataMining => "table1",
            Closure::Identity => "identity",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "table1" => Some(Closure::DataMining),
            "identity" => Some(Closure::Identity),
            _ => None,
        }
    }

    /// Least superset of `base ∪ {agent}` closed under the decomposing rules.
    pub fn analyze(self, agent: &AgentName, base: &DataBase) -> DataBase {
        let mut set: BTreeSet<MessageTerm> = base.0.clone();
        set.insert(MessageTerm::Atom(agent.clone()));
        if self == Closure::Identity {
            return DataBase(set);
        }
        let mut pending: Vec<MessageTerm> = set.iter().cloned().collect();
        while let Some(m) = pending.pop() {
            let derived = match m {
                MessageTerm::Atom(_) => continue,
                MessageTerm::Pair(l, r) => vec![*l, *r],
                MessageTerm::Sig(body, signer) => vec![MessageTerm::Pair(body, Box::new(MessageTerm::Atom(signer)))],
            };
            for d in derived {
                if set.insert(d.clone()) {
                    pending.push(d);
                }
            }
        }
        DataBase(set)
    }

    pub fn saturate(self, agent: &AgentName, base: &DataBase) -> Saturated {
        Saturated { agent: agent.clone(), analyzed: self.analyze(agent, base), closure: self }
    }

    /// Decides `msg ∈ cl_agent(base)`.
    pub fn derivable(self, agent: &AgentName, base: &DataBase, msg: &MessageTerm) -> bool {
        self.saturate(agent, base).derives(msg)
    }
}

/// An analyzed data base, ready for repeated membership queries.
#[derive(Clone, Debug)]
pub struct Saturated {
    agent: AgentName,
    analyzed: DataBase,
    closure: Closure,
}

impl Saturated {
    pub fn derives(&self, msg: &MessageTerm) -> bool {
        if self.analyzed.contains(msg) {
            return true;
        }
        if self.closure == Closure::Identity {
            return false;
        }
        match msg {
            MessageTerm::Atom(_) => false,
            MessageTerm::Pair(l, r) => self.derives(l) && self.derives(r),
            MessageTerm::Sig(body, signer) => *signer == self.agent && self.derives(body),
        }
    }

    pub fn analyzed(&self) -> &DataBase {
        &self.analyzed
    }
}

pub fn analyze(agent: &AgentName, base: &DataBase) -> DataBase {
    Closure::DataMining.analyze(agent, base)
}

pub fn derivable(agent: &AgentName, base: &DataBase, msg: &MessageTerm) -> bool {
    Closure::DataMining.derivable(agent, base, msg)
}

/// Every member of the data-mining closure of size at most `size_bound`.
///
/// Computed by iterating the closure rules literally over the finite set
/// of terms no larger than `max(size_bound, largest term in base)`; a
/// derivation of a small term never needs a larger intermediate, since
/// opening terms only shrinks them and building them only grows towards the
/// goal. Shares no code with [`Closure::derivable`] and serves as its oracle.
pub fn closure_members(agent: &AgentName, base: &DataBase, size_bound: usize) -> BTreeSet<MessageTerm> {
    assert!(size_bound >= 1, "size bound must be positive");
    let limit = base.iter().map(MessageTerm::size).max().unwrap_or(1).max(size_bound);
    let mut known: BTreeSet<MessageTerm> = base.iter().cloned().collect();
    known.insert(MessageTerm::Atom(agent.clone()));
    loop {
        let mut next = known.clone();
        for x in &known {
            match x {
                MessageTerm::Pair(l, r) => {
                    next.insert((**l).clone());
                    next.insert((**r).clone());
                }
                MessageTerm::Sig(body, signer) => {
                    next.insert(MessageTerm::pair((**body).clone(), MessageTerm::Atom(signer.clone())));
                }
                MessageTerm::Atom(_) => {}
            }
            if x.size() + 2 <= limit {
                next.insert(MessageTerm::sig(x.clone(), agent.clone()));
            }
            for y in &known {
                if x.size() + y.size() < limit {
                    next.insert(MessageTerm::pair(x.clone(), y.clone()));
                }
            }
        }
        if next.len() == known.len() {
            break;
        }
        known = next;
    }
    known.into_iter().filter(|m| m.size() <= size_bound).collect()
}
