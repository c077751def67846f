use serde_json::json;

use crate::error::Error;
use crate::formula::{build_derived, circ_tower, parse, render, Derived, Formula};
use crate::logics::{get_logic, semantics_of, LogicId, NamedLogic, Preference};
use crate::semantics::{check_consequence, Countermodel, Semantics};
use crate::structures::{build_lfi3_twist, cpl_matrix, lfi1_matrix};

use super::algebra::{
    check_congruence, check_gate, check_sublogic_inclusion, find_maximality_witnesses,
    recovery_sweep,
};
use super::bridge::check_bivaluation_bridge;
use super::cross::cross_check_semantics;
use super::{Witness, WitnessReport};

/// Registered suite names with a one-line description.
pub const SUITES: &[(&str, &str)] = &[
    ("lfi3-properties", "the six contradiction/consistency properties of LFI3"),
    ("strong-negation", "explosion and excluded middle for strong negation in LFI3"),
    ("circ-star", "o* as a consistency operator in LFI3"),
    ("triviality", "~o^m p |= q in R_n^{n+1} for m >= n+2"),
    ("tower", "which iterated consistency o^k p is a theorem"),
    ("bottom", "o o p & ~o o p is a bottom in L:1,0, o p & ~o p is not"),
    ("lfi1-delta", "o o p separates LFI1 from LFI3"),
    ("sublogic", "CPL and LFI1 as submatrices of LFI3"),
    ("maximality", "unary witnesses for LFI3 maximal w.r.t. LFI1"),
    ("gates", "o* and o# designated exactly on {T,F} and {T,b,F}"),
    ("recovery", "recovering LFI1 and CPL inside LFI3 with o# and o*"),
    ("congruence", "p == q designated iff p and q agree"),
    ("cross-check", "Nmatrix and RNmatrix verdicts agree for L:1,0, L:1,1, L:1,2"),
    ("fixed-point", "R_n^{n+1} agrees with R_n^m, and (ip^m) holds there"),
    ("bivaluation", "snapshot embedding of L:1,0 bivaluations into M_1^0"),
];

/// Optional bounds for [`run_suite`]; unset fields take per-suite defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub depth: Option<usize>,
    pub premise_depth: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
}

/// One consequence claim and the verdict it is expected to get.
#[derive(Debug, Clone)]
pub struct SequentItem {
    pub label: String,
    pub semantics: Semantics,
    pub premises: Vec<Formula>,
    pub goal: Formula,
    pub expect_valid: bool,
}

impl SequentItem {
    fn new(label: &str, semantics: &Semantics, premises: &[&str], goal: &str, expect_valid: bool) -> SequentItem {
        SequentItem {
            label: label.into(),
            semantics: semantics.clone(),
            premises: premises.iter().map(|s| parse(s).expect("static formula")).collect(),
            goal: parse(goal).expect("static formula"),
            expect_valid,
        }
    }

    pub fn sequent(&self) -> String {
        let p: Vec<String> = self.premises.iter().map(render).collect();
        format!(
            "{} {} {}",
            p.join("; "),
            if self.expect_valid { "|=" } else { "|/=" },
            render(&self.goal)
        )
        .trim_start()
        .to_string()
    }
}

/// Whether `cm` is a legal assignment of `sem` designating every premise
/// and not the goal.
pub fn countermodel_holds(
    sem: &Semantics,
    premises: &[Formula],
    goal: &Formula,
    cm: &Countermodel,
) -> Result<bool, Error> {
    let a = &cm.assignment;
    if !a.is_legal(sem)? {
        return Ok(false);
    }
    let nm = sem.nmatrix_ref();
    for p in premises {
        match a.get(p) {
            Some(v) if nm.is_designated(v) => {}
            _ => return Ok(false),
        }
    }
    Ok(a.get(goal) == Some(cm.goal_value) && !nm.is_designated(cm.goal_value))
}

fn lfi3() -> Semantics {
    Semantics::matrix(build_lfi3_twist()).expect("deterministic")
}

fn all_semantics(id: LogicId) -> Vec<Semantics> {
    get_logic(id).semantics
}

fn star(a: &Formula) -> Formula {
    build_derived(Derived::CircStar, std::slice::from_ref(a)).expect("unary")
}

fn triviality_items(pairs: &[(usize, usize)]) -> Result<Vec<SequentItem>, Error> {
    let mut out = Vec::new();
    for &(n, m) in pairs {
        if m < n + 2 {
            return Err(Error::InvalidStructure(format!("triviality needs m >= n+2, got n={n} m={m}")));
        }
        let sem = semantics_of(LogicId::param(n, n + 1), Preference::RNmatrix)?;
        out.push(SequentItem {
            label: format!("n={n} m={m}"),
            semantics: sem,
            premises: vec![Formula::neg(circ_tower(&Formula::atom("p"), m))],
            goal: Formula::atom("q"),
            expect_valid: true,
        });
    }
    Ok(out)
}

/// The consequence claims making up a property suite.
pub fn suite_items(name: &str, params: &SuiteParams) -> Result<Vec<SequentItem>, Error> {
    let l3 = lfi3();
    let items = match name {
        "lfi3-properties" => vec![
            SequentItem::new("1", &l3, &["p & ~p"], "o o p", true),
            SequentItem::new("2", &l3, &["o o p"], "p & ~p", false),
            SequentItem::new("3", &l3, &["o p"], "o o p", false),
            SequentItem::new("4", &l3, &["o o p"], "o p", false),
            SequentItem::new("5", &l3, &["~o p"], "p & ~p", false),
            SequentItem::new("6", &l3, &["p & ~p"], "~o p", true),
        ],
        "strong-negation" => vec![
            SequentItem::new("explosion", &l3, &["p", "~p & o p"], "q", true),
            SequentItem::new("excluded middle", &l3, &[], "p | (~p & o p)", true),
        ],
        "circ-star" => {
            let p = Formula::atom("p");
            let s = star(&p);
            let item = |label: &str, extra: &[&str], goal: Formula, valid: bool| {
                let mut premises = vec![s.clone()];
                premises.extend(extra.iter().map(|x| parse(x).expect("static formula")));
                SequentItem { label: label.into(), semantics: l3.clone(), premises, goal, expect_valid: valid }
            };
            vec![
                item("1", &["p", "~p"], Formula::atom("q"), true),
                item("2", &["p"], Formula::atom("q"), false),
                item("3", &["~p"], Formula::atom("q"), false),
                SequentItem { label: "cc*".into(), semantics: l3.clone(), premises: vec![], goal: star(&s), expect_valid: true },
            ]
        }
        "triviality" => match params.n {
            Some(n) => triviality_items(&[(n, params.m.unwrap_or(n + 2))])?,
            None => triviality_items(&[(0, 2), (0, 3), (1, 3)])?,
        },
        "tower" => {
            let mut v = Vec::new();
            let claims: [(LogicId, usize, bool); 5] = [
                (LogicId::Named(NamedLogic::MbCci), 2, true),
                (LogicId::param(1, 0), 2, false),
                (LogicId::param(1, 0), 3, true),
                (LogicId::param(2, 0), 4, true),
                (LogicId::param(2, 0), 3, false),
            ];
            for (id, k, valid) in claims {
                for sem in all_semantics(id) {
                    v.push(SequentItem {
                        label: format!("{} in {}", id.canonical(), sem.name()),
                        semantics: sem,
                        premises: vec![],
                        goal: circ_tower(&Formula::atom("p"), k),
                        expect_valid: valid,
                    });
                }
            }
            v
        }
        "bottom" => {
            let mut v = Vec::new();
            for sem in all_semantics(LogicId::param(1, 0)) {
                v.push(SequentItem::new(&format!("o o p in {}", sem.name()), &sem, &["o o p", "~o o p"], "q", true));
                v.push(SequentItem::new(&format!("o p in {}", sem.name()), &sem, &["o p", "~o p"], "q", false));
            }
            v
        }
        "lfi1-delta" => vec![
            SequentItem::new("LFI1", &Semantics::matrix(lfi1_matrix()).expect("deterministic"), &[], "o o p", true),
            SequentItem::new("LFI3", &l3, &[], "o o p", false),
        ],
        other => return Err(Error::UnknownSuite(other.into())),
    };
    Ok(items)
}

fn run_items(claim: &str, items: &[SequentItem]) -> Result<WitnessReport, Error> {
    let mut r = WitnessReport::new(claim);
    for it in items {
        r.checked += 1;
        let v = check_consequence(&it.semantics, &it.premises, &it.goal);
        let w = Witness::new(format!("{} [{}]", it.label, it.semantics.name()))
            .text(it.sequent())
            .value(if v.is_valid() { "valid" } else { "refuted" })
            .evidence(v.to_json());
        r.witnesses.push(w);
        if v.is_valid() != it.expect_valid {
            r.fail(
                format!("{}: expected {}, got {}", it.label, if it.expect_valid { "valid" } else { "refuted" }, if v.is_valid() { "valid" } else { "refuted" }),
                Some(json!({ "item": it.label, "sequent": it.sequent(), "verdict": v.to_json() })),
            );
        }
        if let Some(cm) = v.countermodel() {
            if !countermodel_holds(&it.semantics, &it.premises, &it.goal, cm)? {
                r.fail(format!("{}: countermodel does not re-verify", it.label), Some(v.to_json()));
            }
        }
    }
    Ok(r)
}

/// Runs a suite of consequence claims (see [`suite_items`]).
pub fn run_property_suite(name: &str, params: &SuiteParams) -> Result<WitnessReport, Error> {
    let items = suite_items(name, params)?;
    run_items(name, &items)
}

fn iff(a: Formula, b: Formula) -> Formula {
    build_derived(Derived::Iff, &[a, b]).expect("binary")
}

/// In `R_n^{n+1}`: the `(ip^m)` instance `¬∘^m¬α ↔ ¬∘^mα` and
/// `∘^jα ↔ ∘^j¬α` for `1 ≤ j ≤ n+1`, each for α in `p`, `¬p`, `∘p`.
pub fn check_fixed_point_axiom(n: usize, m: usize) -> Result<WitnessReport, Error> {
    if m < n + 2 {
        return Err(Error::InvalidStructure(format!("fixed point needs m >= n+2, got n={n} m={m}")));
    }
    let sem = semantics_of(LogicId::param(n, n + 1), Preference::RNmatrix)?;
    let mut items = Vec::new();
    for a in ["p", "~p", "o p"] {
        let a = parse(a).expect("static formula");
        let na = Formula::neg(a.clone());
        items.push(SequentItem {
            label: format!("ip{m} at {}", render(&a)),
            semantics: sem.clone(),
            premises: vec![],
            goal: iff(Formula::neg(circ_tower(&na, m)), Formula::neg(circ_tower(&a, m))),
            expect_valid: true,
        });
        for j in 1..=n + 1 {
            items.push(SequentItem {
                label: format!("o^{j} at {}", render(&a)),
                semantics: sem.clone(),
                premises: vec![],
                goal: iff(circ_tower(&a, j), circ_tower(&na, j)),
                expect_valid: true,
            });
        }
    }
    run_items(&format!("fixed-point-axiom:n={n},m={m}"), &items)
}

fn rn(n: usize, k: usize) -> Result<Semantics, Error> {
    semantics_of(LogicId::param(n, k), Preference::RNmatrix)
}

fn nm(n: usize, k: usize) -> Result<Semantics, Error> {
    semantics_of(LogicId::param(n, k), Preference::Nmatrix)
}

/// Runs a registered suite. Property suites give one report; the others
/// may give several.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<WitnessReport>, Error> {
    let p = Formula::atom("p");
    let l3 = build_lfi3_twist();
    let out = match name {
        "sublogic" => vec![
            check_sublogic_inclusion(&l3, &cpl_matrix())?,
            check_sublogic_inclusion(&l3, &lfi1_matrix())?,
        ],
        "maximality" => vec![find_maximality_witnesses(&l3, &lfi1_matrix(), params.depth.unwrap_or(4))?],
        "gates" => vec![
            check_gate(&l3, &["T", "F"], &star(&p))?,
            check_gate(&l3, &["T", "b", "F"], &build_derived(Derived::CircHash, std::slice::from_ref(&p))?)?,
        ],
        "recovery" => {
            let depth = params.depth.unwrap_or(3);
            let hash = build_derived(Derived::CircHash, std::slice::from_ref(&p))?;
            vec![
                recovery_sweep(&l3, &lfi1_matrix(), &hash, &["p", "q"], depth, 2)?,
                recovery_sweep(&l3, &cpl_matrix(), &star(&p), &["p", "q"], depth, 2)?,
            ]
        }
        "congruence" => vec![check_congruence()?],
        "cross-check" => {
            let pairs = vec![(nm(1, 0)?, rn(1, 0)?), (nm(1, 1)?, rn(1, 1)?), (nm(1, 2)?, rn(1, 2)?)];
            vec![cross_check_semantics(&pairs, &["p"], params.depth.unwrap_or(3), params.premise_depth.unwrap_or(1))?]
        }
        "fixed-point" => {
            let n = params.n.unwrap_or(0);
            let m = params.m.unwrap_or(n + 2);
            vec![
                check_fixed_point_axiom(n, m)?,
                cross_check_semantics(&[(rn(n, n + 1)?, rn(n, m)?)], &["p"], params.depth.unwrap_or(3), params.premise_depth.unwrap_or(1))?,
            ]
        }
        "bivaluation" => vec![check_bivaluation_bridge(LogicId::param(1, 0), &["p"], params.depth.unwrap_or(3))?],
        other => vec![run_property_suite(other, params)?],
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_suites_match_their_markings() {
        for name in ["lfi3-properties", "strong-negation", "circ-star", "triviality", "tower", "bottom", "lfi1-delta"] {
            let r = run_property_suite(name, &SuiteParams::default()).unwrap();
            assert!(r.is_verified(), "{r}");
        }
    }

    #[test]
    fn item_three_countermodel() {
        let r = run_property_suite("lfi3-properties", &SuiteParams::default()).unwrap();
        let ev = r.witnesses[2].evidence.as_ref().unwrap();
        assert_eq!(ev["assignment"]["p"], "t");
    }

    #[test]
    fn fixed_point_axioms() {
        for (n, m) in [(0, 2), (0, 3), (1, 3)] {
            let r = check_fixed_point_axiom(n, m).unwrap();
            assert!(r.is_verified(), "{r}");
        }
        assert!(check_fixed_point_axiom(1, 2).is_err());
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &SuiteParams::default()), Err(Error::UnknownSuite(_))));
        for (name, _) in SUITES {
            if suite_items(name, &SuiteParams::default()).is_err() {
                assert!(!matches!(run_suite(name, &SuiteParams { depth: Some(1), premise_depth: Some(0), ..Default::default() }), Err(Error::UnknownSuite(_))));
            }
        }
    }
}
