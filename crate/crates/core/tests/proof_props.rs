use std::path::Path;

use ldiip_core::decide::decide;
use ldiip_core::model::{enumerate_models, EnumerationSpec};
use ldiip_core::proof::{corpus, is_axiom, parse_derivation, render_derivation};
use ldiip_core::syntax::{parse_formula, Universe};
use ldiip_core::{check_derivation, AxiomCatalog};

#[test]
fn corpus_conclusions_hold_on_small_models() {
    for e in corpus() {
        if !e.derivation.premises.is_empty() {
            continue;
        }
        let f = e.derivation.conclusion().unwrap();
        for m in enumerate_models(&EnumerationSpec::for_formula(f, 3)) {
            assert!(m.global_truth(f).unwrap(), "{} fails on\n{}", e.name, ldiip_core::model::render_model(&m));
        }
    }
}

#[test]
fn shipped_corpus_files_match_the_built_corpus() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let u = Universe::default();
    for e in corpus() {
        let path = dir.join(format!("{}.drv", e.name));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
        assert_eq!(text, render_derivation(&e.derivation, Some(&u)), "{}", e.name);
        let parsed = parse_derivation(&text, &u).unwrap();
        assert_eq!(check_derivation(&parsed, &AxiomCatalog::default()), Ok(()), "{}", e.name);
    }
}

#[test]
fn monotonicity_is_neither_an_axiom_nor_derived() {
    let u = Universe::default();
    let mono = parse_formula("([m]a P) -> [(m, n)]a P", &u).unwrap();
    assert_eq!(is_axiom(&mono), None);
    assert!(corpus().iter().all(|e| e.derivation.conclusion() != Some(&mono)));
    assert!(decide(&mono, Some(4)).unwrap().is_counter_model());
}

#[test]
fn premise_necessitation() {
    let u = Universe::default();
    let d = parse_derivation("premises:\n  P\n1. P ; prem:1\n2. [m]a P ; nec:1,[m]a\n", &u).unwrap();
    assert_eq!(check_derivation(&d, &AxiomCatalog::default()), Ok(()));
}
