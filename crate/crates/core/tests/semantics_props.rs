mod common;

use lcc::formula::enumerate_formulas;
use lcc::logics::{semantics_of, LogicId, NamedLogic, Preference};
use lcc::metalogic::{countermodel_holds, cross_check_semantics};
use lcc::semantics::{check_consequence, check_consequence_with, enumerate_legal_assignments, eval_matrix, Semantics};
use proptest::prelude::*;

use common::formula;

fn sem(id: LogicId, pref: Preference) -> Semantics {
    semantics_of(id, pref).unwrap()
}

fn samples() -> Vec<Semantics> {
    vec![
        sem(LogicId::Named(NamedLogic::MbCciw), Preference::Nmatrix),
        sem(LogicId::param(1, 0), Preference::Nmatrix),
        sem(LogicId::param(1, 0), Preference::RNmatrix),
        sem(LogicId::param(1, 2), Preference::RNmatrix),
        sem(LogicId::param(0, 3), Preference::RNmatrix),
        sem(LogicId::Named(NamedLogic::Lfi3), Preference::Matrix),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monotone_and_countermodels_sound(
        ps in prop::collection::vec(formula(&["p", "q"], 3), 0..3),
        extra in formula(&["p", "q"], 3),
        goal in formula(&["p", "q"], 3),
    ) {
        for s in samples() {
            let v = check_consequence(&s, &ps, &goal);
            match v.countermodel() {
                Some(cm) => prop_assert!(countermodel_holds(&s, &ps, &goal, cm).unwrap()),
                None => {
                    let mut more = ps.clone();
                    more.push(extra.clone());
                    prop_assert!(check_consequence(&s, &more, &goal).is_valid());
                }
            }
        }
    }

    #[test]
    fn extra_formulas_do_not_change_verdicts(
        ps in prop::collection::vec(formula(&["p", "q"], 3), 0..2),
        goal in formula(&["p", "q"], 4),
        extra in prop::collection::vec(formula(&["p", "q"], 4), 1..3),
    ) {
        for s in samples() {
            let plain = check_consequence(&s, &ps, &goal).is_valid();
            prop_assert_eq!(check_consequence_with(&s, &ps, &goal, &extra).is_valid(), plain, "{}", s.name());
        }
    }

    #[test]
    fn r00_matches_its_nmatrix_at_depth_four(p in formula(&["p"], 4), goal in formula(&["p"], 4)) {
        let m = sem(LogicId::param(0, 0), Preference::Nmatrix);
        let r = sem(LogicId::param(0, 0), Preference::RNmatrix);
        prop_assert_eq!(check_consequence(&m, &[p.clone()], &goal).is_valid(), check_consequence(&r, &[p], &goal).is_valid());
    }

    #[test]
    fn matrices_agree_with_evaluation(goal in formula(&["p", "q"], 4)) {
        for id in [NamedLogic::Lfi3, NamedLogic::Lfi1, NamedLogic::Cpl] {
            let s = sem(LogicId::Named(id), Preference::Matrix);
            let m = s.nmatrix_ref();
            let d = m.domain();
            let tt = d.values().all(|a| d.values().all(|b| {
                m.is_designated(eval_matrix(m, |x| Some(if x == "p" { a } else { b }), &goal).unwrap())
            }));
            prop_assert_eq!(check_consequence(&s, &[], &goal).is_valid(), tt);
        }
    }
}

#[test]
fn r00_matches_its_nmatrix_exhaustively() {
    let pair = (sem(LogicId::param(0, 0), Preference::Nmatrix), sem(LogicId::param(0, 0), Preference::RNmatrix));
    let r = cross_check_semantics(&[pair], &["p"], 3, 1).unwrap();
    assert!(r.is_verified(), "{r}");
}

#[test]
fn singleton_cells_enumerate_every_atom_assignment() {
    let s = sem(LogicId::Named(NamedLogic::Lfi3), Preference::Matrix);
    for goal in enumerate_formulas(&["p", "q"], 1) {
        let cl = lcc::formula::subformula_closure([&goal]);
        let atoms = goal.atoms().len() as u32;
        let n = enumerate_legal_assignments(s.nmatrix_ref(), &cl, &[]).unwrap().count();
        assert_eq!(n, 5usize.pow(atoms));
    }
}
