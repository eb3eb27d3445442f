//! A toolkit for the logic of negation-complete interactive proofs.
//!
//! The logic extends classical propositional logic with knowledge atoms
//! `a knows M` and a proof modality `[M]a φ`, read "message M can prove
//! whether or not φ to agent a". This crate provides:
//!
//! * [`syntax`]: message terms, formulas, the text grammar and schema matching,
//! * [`knowledge`]: the data-mining closure deciding which messages an agent can derive,
//! * [`concrete`]: the oracle-computational state space and its successor function,
//! * [`model`]: finite Kripke models, evaluation, filtration and model enumeration,
//! * [`proof`]: the Hilbert system, derivation checking and a corpus of derivations,
//! * [`decide`]: validity checking with counter-models and the single-agent compilation pass.

pub mod concrete;
pub mod config;
pub mod decide;
pub mod interface;
pub mod knowledge;
pub mod model;
pub mod proof;
pub mod syntax;

pub use concrete::{ConcreteState, ConcreteValuation};
pub use config::Config;
pub use decide::{decide, decide_via_compilation, satisfiable, Verdict};
pub use interface::{InterfaceReport, Property, Violation};
pub use knowledge::{Closure, DataBase};
pub use model::FiniteModel;
pub use proof::{check_derivation, AxiomCatalog, Derivation, Justification};
pub use syntax::{parse_formula, render, AgentName, Formula, MessageTerm, Modality, PropName, Universe};
