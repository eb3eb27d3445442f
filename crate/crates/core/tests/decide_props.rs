mod common;

use common::{random_formula, Vocab};
use ldiip_core::decide::{
    compile_singleton, decide, decide_via_compilation, satisfiable, satisfiable_unbounded, CompiledVerdict,
    DecideOptions,
};
use ldiip_core::model::{enumerate_models, EnumerationSpec};
use ldiip_core::syntax::Universe;
use ldiip_core::Verdict;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_vocab() -> Vocab {
    let mut v = Vocab::two_agents();
    v.messages.truncate(2);
    v.props.truncate(1);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Elimination is exhaustive; the enumeration is exhaustive per size.
    #[test]
    fn elimination_agrees_with_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, &small_vocab(), 2);
        let bounded = satisfiable(&f, 2).unwrap();
        let unbounded = satisfiable_unbounded(&f, &DecideOptions::default()).unwrap();
        if bounded.is_some() {
            prop_assert!(unbounded.is_some(), "{f}");
        }
        if let Some((m, s)) = unbounded {
            prop_assert!(m.eval(s, &f).unwrap());
            prop_assert!(m.validate_interface(&f.modalities()).is_valid());
            if m.len() <= 2 {
                prop_assert!(bounded.is_some(), "{f}");
            }
        }
    }

    #[test]
    fn counter_models_refute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, &small_vocab(), 3);
        if let Verdict::CounterModel { model, state } = decide(&f, Some(3)).unwrap() {
            prop_assert!(model.validate_interface(&f.modalities()).is_valid());
            prop_assert!(!model.eval(state, &f).unwrap());
        }
    }

    #[test]
    fn compilation_preserves_meaning(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Universe::from_list("a").unwrap();
        let f = random_formula(&mut rng, &Vocab::single_agent(), 3);
        let g = compile_singleton(&f, &u).unwrap();
        let spec = EnumerationSpec::for_formula(&f.clone().and(g.clone()), 2);
        for m in enumerate_models(&spec) {
            for s in 0..m.len() {
                prop_assert_eq!(m.eval(s, &f).unwrap(), m.eval(s, &g).unwrap());
            }
        }
        let direct = decide(&f, None).unwrap();
        let compiled = decide_via_compilation(&f, &u, &DecideOptions::default()).unwrap();
        prop_assert_eq!(direct == Verdict::Valid, compiled == CompiledVerdict::Valid);
    }
}

#[test]
fn single_agent_corpus_conclusions_are_valid_after_compilation() {
    let u = Universe::from_list("a").unwrap();
    let opts = DecideOptions { ceiling: u64::MAX, ..DecideOptions::default() };
    let mut checked = 0;
    for e in ldiip_core::proof::corpus() {
        let f = e.derivation.conclusion().unwrap();
        if !e.derivation.premises.is_empty() || f.agents().len() > 1 {
            continue;
        }
        assert_eq!(decide_via_compilation(f, &u, &opts), Ok(CompiledVerdict::Valid), "{}", e.name);
        checked += 1;
    }
    assert!(checked >= 10, "{checked}");
}
