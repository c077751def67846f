mod common;

use std::collections::BTreeMap;

use lcc::formula::{circ_tower, parse, render, render_pretty, subformula_closure, Formula, Schema};
use proptest::prelude::*;

use common::formula;

fn sorted(v: Vec<Formula>) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(render).collect();
    s.sort();
    s
}

proptest! {
    #[test]
    fn render_round_trips(f in formula(&["p", "q", "r"], 5)) {
        prop_assert_eq!(parse(&render(&f)).unwrap(), f.clone());
        prop_assert_eq!(parse(&render_pretty(&f)).unwrap(), f);
    }

    #[test]
    fn closure_is_idempotent_and_monotone(a in formula(&["p", "q"], 4), b in formula(&["p", "q"], 4)) {
        let ca = subformula_closure([&a]);
        prop_assert_eq!(sorted(subformula_closure(&ca)), sorted(ca.clone()));
        let cab = subformula_closure([&a, &b]);
        for g in &ca {
            prop_assert!(cab.contains(g));
        }
        // every formula comes after its children
        for (i, g) in cab.iter().enumerate() {
            for c in g.children() {
                prop_assert!(cab[..i].contains(c));
            }
        }
    }

    #[test]
    fn circ_towers_compose(f in formula(&["p"], 3), m in 0usize..4, n in 0usize..4) {
        prop_assert_eq!(circ_tower(&f, m + n), circ_tower(&circ_tower(&f, m), n));
    }

    #[test]
    fn instantiation_is_uniform(a in formula(&["p", "q"], 3), b in formula(&["p", "q"], 3)) {
        let s = Schema::parse("(A -> B) & ~A | o (B & A)").unwrap();
        let mut subst = BTreeMap::new();
        subst.insert("A".to_string(), a.clone());
        subst.insert("B".to_string(), b.clone());
        let got = s.instantiate(&subst).unwrap();
        let want = Formula::or(
            Formula::and(Formula::imp(a.clone(), b.clone()), Formula::neg(a.clone())),
            Formula::circ(Formula::and(b, a)),
        );
        prop_assert_eq!(got, want);
    }
}
