mod strategies;

use ldiip_core::proof::AxiomName;
use ldiip_core::syntax::{match_schema, parse_formula, render, Substitution, Universe};
use proptest::prelude::*;
use strategies::{agent, formula, message};

proptest! {
    #[test]
    fn render_then_parse_is_identity(f in formula()) {
        prop_assert_eq!(parse_formula(&render(&f), &Universe::default()).unwrap(), f);
    }

    #[test]
    fn expanding_core_syntax_changes_nothing(f in formula()) {
        let once = render(&f);
        let twice = render(&parse_formula(&once, &Universe::default()).unwrap());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn closure_is_no_larger_than_the_formula(f in formula()) {
        prop_assert!(f.subformula_closure().len() <= f.size());
    }

    #[test]
    fn schemas_match_their_instances(
        phi in formula(), psi in formula(), m in message(), a in agent(), t in agent(),
    ) {
        let theta = Substitution::new()
            .formula("phi", phi)
            .formula("psi", psi)
            .message("M", m)
            .agent("a", a)
            .agent("t", t);
        for name in AxiomName::ALL {
            let schema = name.schema();
            let instance = schema.instantiate(&theta).unwrap();
            let found = match_schema(&schema, &instance);
            prop_assert!(found.is_some(), "{} does not match {}", name, instance);
            prop_assert_eq!(schema.instantiate(&found.unwrap()).unwrap(), instance);
        }
    }
}
