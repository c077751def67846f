mod common;

use std::fs;
use std::path::Path;

use lcc::formula::{enumerate_formulas, Formula};
use lcc::hilbert::{bivaluation_refutes, check_bivaluation, check_proof, Proof, ProofErrorKind};
use lcc::logics::{get_logic, semantics_of, LogicId, Preference};
use lcc::semantics::check_consequence;
use proptest::prelude::*;

use common::formula;

fn load(name: &str) -> Proof {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/proofs").join(name);
    Proof::from_json(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn corpus_proofs_check_and_are_sound() {
    for name in ["mp.json", "identity.json", "cc1.json", "bc1.json", "ip1.json"] {
        let checked = check_proof(&load(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let sems = get_logic(checked.logic).semantics;
        assert!(!sems.is_empty(), "{name}");
        for s in &sems {
            for line in &checked.lines {
                assert!(
                    check_consequence(s, &checked.premises, line).is_valid(),
                    "{name}: {line} not a consequence in {}",
                    s.name()
                );
            }
        }
    }
}

#[test]
fn corpus_errors_point_at_the_step() {
    let e = check_proof(&load("bad_mp.json")).unwrap_err();
    assert_eq!(e.step, 3);
    assert!(matches!(e.kind, ProofErrorKind::AntecedentMismatch { .. }));
    let e = check_proof(&load("missing_axiom.json")).unwrap_err();
    assert_eq!(e.step, 2);
    assert!(matches!(e.kind, ProofErrorKind::UnknownSchema(_)));
    let e = check_proof(&load("wrong_conclusion.json")).unwrap_err();
    assert_eq!(e.step, 1);
    assert!(matches!(e.kind, ProofErrorKind::ConclusionMismatch { .. }));
}

fn agrees(premises: &[Formula], goal: &Formula) -> Result<(), String> {
    let id = LogicId::param(1, 0);
    let m = semantics_of(id, Preference::Nmatrix).unwrap();
    let by_biv = bivaluation_refutes(id, premises, goal).unwrap();
    if let Some(v) = &by_biv {
        check_bivaluation(id, v).map_err(|e| e.to_string())?;
    }
    let by_m = !check_consequence(&m, premises, goal).is_valid();
    if by_biv.is_some() == by_m {
        Ok(())
    } else {
        Err(format!("{premises:?} |= {goal}: bivaluations {}, M1^0 {by_m}", by_biv.is_some()))
    }
}

#[test]
fn bivaluations_and_m10_refute_the_same_sequents() {
    for goal in enumerate_formulas(&["p", "q"], 2) {
        agrees(&[], &goal).unwrap();
    }
    let goals = enumerate_formulas(&["p"], 2);
    for premise in enumerate_formulas(&["p"], 1) {
        for goal in &goals {
            agrees(std::slice::from_ref(&premise), goal).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bivaluations_and_m10_agree_at_depth_three(
        ps in prop::collection::vec(formula(&["p", "q"], 3), 0..2),
        goal in formula(&["p", "q"], 3),
    ) {
        prop_assert!(agrees(&ps, &goal).is_ok(), "{:?}", agrees(&ps, &goal));
    }
}
