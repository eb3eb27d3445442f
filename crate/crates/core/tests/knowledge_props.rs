mod strategies;

use std::collections::BTreeSet;

use ldiip_core::knowledge::{analyze, closure_members, derivable, DataBase};
use ldiip_core::syntax::{AgentName, MessageTerm};
use proptest::prelude::*;
use strategies::{agent, message, small_message};

fn base() -> impl Strategy<Value = DataBase> {
    proptest::collection::vec(small_message(), 0..4).prop_map(|v| v.into_iter().collect())
}

fn no_sig_by(b: &AgentName, m: &MessageTerm) -> bool {
    m.subterms().iter().all(|t| !matches!(t, MessageTerm::Sig(_, s) if s == b))
}

/// Every term of size at most `k` over `atoms` with signers `a`, `b`.
fn all_terms(atoms: &BTreeSet<MessageTerm>, k: usize) -> BTreeSet<MessageTerm> {
    let signers = [AgentName::new("a").unwrap(), AgentName::new("b").unwrap()];
    let mut by_size: Vec<Vec<MessageTerm>> = vec![Vec::new(); k + 1];
    if k >= 1 {
        by_size[1] = atoms.iter().cloned().collect();
    }
    for n in 2..=k {
        let mut here = Vec::new();
        for l in 1..n - 1 {
            let r = n - 1 - l;
            for x in &by_size[l] {
                for y in &by_size[r] {
                    here.push(MessageTerm::pair(x.clone(), y.clone()));
                }
            }
        }
        if n >= 3 {
            for x in &by_size[n - 2] {
                for s in &signers {
                    here.push(MessageTerm::sig(x.clone(), s.clone()));
                }
            }
        }
        by_size[n] = here;
    }
    by_size.into_iter().flatten().collect()
}

proptest! {
    #[test]
    fn closure_is_extensive(a in agent(), d in base()) {
        for m in d.iter() {
            prop_assert!(derivable(&a, &d, m));
        }
    }

    #[test]
    fn closure_is_monotone(a in agent(), d in base(), extra in base(), probe in message()) {
        let bigger = d.union(&extra);
        if derivable(&a, &d, &probe) {
            prop_assert!(derivable(&a, &bigger, &probe));
        }
        prop_assert!(closure_members(&a, &d, 3).is_subset(&closure_members(&a, &bigger, 3)));
    }

    #[test]
    fn closure_is_idempotent(a in agent(), d in base(), probe in message()) {
        prop_assert_eq!(derivable(&a, &analyze(&a, &d), &probe), derivable(&a, &d, &probe));
        let members: DataBase = closure_members(&a, &d, 3).into_iter().chain(d.iter().cloned()).collect();
        prop_assert_eq!(derivable(&a, &members, &probe), derivable(&a, &d, &probe));
    }

    #[test]
    fn signatures_cannot_be_forged(d in base(), body in message()) {
        let (a, b) = (AgentName::new("a").unwrap(), AgentName::new("b").unwrap());
        if d.iter().all(|m| no_sig_by(&b, m)) {
            prop_assert!(!derivable(&a, &d, &MessageTerm::sig(body, b)));
        }
    }

    #[test]
    fn bounded_members_agree_with_membership(a in agent(), d in base(), k in 1usize..=5) {
        let mut atoms: BTreeSet<MessageTerm> = d.iter().flat_map(|m| m.subterms()).filter(|t| matches!(t, MessageTerm::Atom(_))).collect();
        atoms.insert(MessageTerm::atom(AgentName::new("a").unwrap()));
        atoms.insert(MessageTerm::atom(AgentName::new("b").unwrap()));
        let expected: BTreeSet<MessageTerm> =
            all_terms(&atoms, k).into_iter().filter(|t| derivable(&a, &d, t)).collect();
        prop_assert_eq!(closure_members(&a, &d, k), expected);
    }
}
