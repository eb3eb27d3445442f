//! proptest strategies for terms and formulas over agents `a`, `b`.
#![allow(dead_code)]

use ldiip_core::syntax::{AgentName, Formula, MessageTerm, PropName};
use proptest::prelude::*;

pub fn agent() -> impl Strategy<Value = AgentName> {
    prop_oneof![Just("a"), Just("b")].prop_map(|s| AgentName::new(s).unwrap())
}

pub fn message() -> impl Strategy<Value = MessageTerm> {
    let leaf = prop_oneof![Just("a"), Just("b"), Just("m"), Just("n")]
        .prop_map(|s| MessageTerm::atom(AgentName::new(s).unwrap()));
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| MessageTerm::pair(l, r)),
            (inner, agent()).prop_map(|(b, s)| MessageTerm::sig(b, s)),
        ]
    })
}

/// Terms of size at most 5, the range the closure oracle is run on.
pub fn small_message() -> impl Strategy<Value = MessageTerm> {
    message().prop_filter("size at most 5", |m| m.size() <= 5)
}

pub fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop_oneof![Just("P"), Just("Q"), Just("R")].prop_map(|p| Formula::prop(PropName::new(p).unwrap())),
        (agent(), message()).prop_map(|(a, m)| Formula::knows(a, m)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| l.and(r)),
            (message(), agent(), inner).prop_map(|(m, a, f)| Formula::proves(m, a, f)),
        ]
    })
}
