//! Hilbert proofs, bivaluations for `L_1^0`/`L_1^1`, and the snapshot
//! embedding into `M_1^0`.

mod bivaluation;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::formula::{parse, Formula, Substitution};
use crate::logics::{get_logic, LogicId};

pub use bivaluation::{
    bivaluation_refutes, check_bivaluation, enumerate_bivaluations, neg_extension,
    snapshot_embedding, BiValuation, BivaluationSpace,
};

/// One line of a proof. Step and premise indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Step {
    Premise {
        index: usize,
    },
    Axiom {
        schema: String,
        #[serde(default)]
        subst: BTreeMap<String, String>,
    },
    Mp {
        major: usize,
        minor: usize,
    },
}

/// A proof in the JSON exchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub logic: String,
    #[serde(default)]
    pub premises: Vec<String>,
    pub steps: Vec<Step>,
    /// When present, must equal the formula of the last step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
}

impl Proof {
    pub fn from_json(text: &str) -> Result<Proof, Error> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofErrorKind {
    UnknownLogic(String),
    BadFormula { what: String, message: String },
    Empty,
    NoSuchPremise(usize),
    UnknownSchema(String),
    MissingBinding(String),
    ExtraBinding(String),
    /// MP cites a step that is not strictly earlier.
    DanglingReference(usize),
    NotAnImplication(usize),
    AntecedentMismatch { expected: String, found: String },
    ConclusionMismatch { expected: String, found: String },
}

impl fmt::Display for ProofErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofErrorKind::UnknownLogic(l) => write!(f, "unknown logic `{l}`"),
            ProofErrorKind::BadFormula { what, message } => write!(f, "{what}: {message}"),
            ProofErrorKind::Empty => f.write_str("proof has no steps"),
            ProofErrorKind::NoSuchPremise(i) => write!(f, "there is no premise {i}"),
            ProofErrorKind::UnknownSchema(s) => write!(f, "the logic has no axiom `{s}`"),
            ProofErrorKind::MissingBinding(m) => write!(f, "no binding for metavariable `{m}`"),
            ProofErrorKind::ExtraBinding(m) => write!(f, "`{m}` is not a metavariable of the schema"),
            ProofErrorKind::DanglingReference(i) => {
                write!(f, "modus ponens cites step {i}, which is not an earlier step")
            }
            ProofErrorKind::NotAnImplication(i) => {
                write!(f, "major premise (step {i}) is not an implication")
            }
            ProofErrorKind::AntecedentMismatch { expected, found } => {
                write!(f, "minor premise is `{found}`, antecedent is `{expected}`")
            }
            ProofErrorKind::ConclusionMismatch { expected, found } => {
                write!(f, "last step proves `{found}`, not the stated conclusion `{expected}`")
            }
        }
    }
}

/// A proof error; `step` is 1-based, or 0 for problems outside the steps.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ProofError {
    pub step: usize,
    pub kind: ProofErrorKind,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.step == 0 {
            write!(f, "proof: {}", self.kind)
        } else {
            write!(f, "step {}: {}", self.step, self.kind)
        }
    }
}

/// A proof that passed checking, with every line's formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedProof {
    pub logic: LogicId,
    pub premises: Vec<Formula>,
    pub lines: Vec<Formula>,
}

impl CheckedProof {
    pub fn conclusion(&self) -> &Formula {
        self.lines.last().expect("nonempty")
    }
}

fn metavar_name(key: &str) -> &str {
    match key {
        "α" => "A",
        "β" => "B",
        "γ" => "C",
        k => k,
    }
}

/// Checks every step; on success returns the derived formulas.
pub fn check_proof(p: &Proof) -> Result<CheckedProof, ProofError> {
    let err = |step: usize, kind: ProofErrorKind| ProofError { step, kind };
    let logic: LogicId = p
        .logic
        .parse()
        .map_err(|_| err(0, ProofErrorKind::UnknownLogic(p.logic.clone())))?;
    let spec = get_logic(logic);
    let premises: Vec<Formula> = p
        .premises
        .iter()
        .enumerate()
        .map(|(i, s)| {
            parse(s).map_err(|e| {
                err(
                    0,
                    ProofErrorKind::BadFormula {
                        what: format!("premise {}", i + 1),
                        message: e.to_string(),
                    },
                )
            })
        })
        .collect::<Result<_, _>>()?;
    if p.steps.is_empty() {
        return Err(err(0, ProofErrorKind::Empty));
    }
    let mut lines: Vec<Formula> = Vec::with_capacity(p.steps.len());
    for (i, step) in p.steps.iter().enumerate() {
        let no = i + 1;
        let f = match step {
            Step::Premise { index } => premises
                .get(index.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| err(no, ProofErrorKind::NoSuchPremise(*index)))?,
            Step::Axiom { schema, subst } => {
                let ax = spec
                    .axiom(schema)
                    .ok_or_else(|| err(no, ProofErrorKind::UnknownSchema(schema.clone())))?;
                let mut s = Substitution::new();
                for (k, v) in subst {
                    let name = metavar_name(k);
                    if !ax.schema.metavars().iter().any(|m| &**m == name) {
                        return Err(err(no, ProofErrorKind::ExtraBinding(k.clone())));
                    }
                    let f = parse(v).map_err(|e| {
                        err(
                            no,
                            ProofErrorKind::BadFormula {
                                what: format!("binding for `{k}`"),
                                message: e.to_string(),
                            },
                        )
                    })?;
                    s.insert(name.to_string(), f);
                }
                ax.schema.instantiate(&s).map_err(|e| match e {
                    Error::MissingBinding(m) => err(no, ProofErrorKind::MissingBinding(m)),
                    other => unreachable!("instantiation fails only on bindings: {other}"),
                })?
            }
            Step::Mp { major, minor } => {
                for &r in [major, minor] {
                    if r == 0 || r >= no {
                        return Err(err(no, ProofErrorKind::DanglingReference(r)));
                    }
                }
                let Formula::Imp(a, b) = &lines[major - 1] else {
                    return Err(err(no, ProofErrorKind::NotAnImplication(*major)));
                };
                let m = &lines[minor - 1];
                if **a != *m {
                    return Err(err(
                        no,
                        ProofErrorKind::AntecedentMismatch {
                            expected: a.to_string(),
                            found: m.to_string(),
                        },
                    ));
                }
                (**b).clone()
            }
        };
        lines.push(f);
    }
    if let Some(c) = &p.conclusion {
        let n = lines.len();
        let want = parse(c).map_err(|e| {
            err(
                n,
                ProofErrorKind::BadFormula {
                    what: "conclusion".into(),
                    message: e.to_string(),
                },
            )
        })?;
        if want != lines[n - 1] {
            return Err(err(
                n,
                ProofErrorKind::ConclusionMismatch {
                    expected: want.to_string(),
                    found: lines[n - 1].to_string(),
                },
            ));
        }
    }
    Ok(CheckedProof {
        logic,
        premises,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn proof(json: &str) -> Proof {
        Proof::from_json(json).unwrap()
    }

    #[test]
    fn one_mp_step() {
        let p = proof(
            r#"{"logic":"mbCciw","premises":["p"],"steps":[
                {"kind":"axiom","schema":"Ax1","subst":{"A":"p","B":"q"}},
                {"kind":"premise","index":1},
                {"kind":"mp","major":1,"minor":2}],
                "conclusion":"q -> p"}"#,
        );
        let c = check_proof(&p).unwrap();
        assert_eq!(c.conclusion(), &parse("q -> p").unwrap());
    }

    #[test]
    fn greek_keys_and_cc1() {
        let p = proof(
            r#"{"logic":"L:1,0","steps":[{"kind":"axiom","schema":"cc1","subst":{"α":"p"}}]}"#,
        );
        assert_eq!(check_proof(&p).unwrap().conclusion(), &parse("o o o p").unwrap());
    }

    #[test]
    fn errors_carry_the_step() {
        let later = proof(
            r#"{"logic":"mbC","premises":["p"],"steps":[
                {"kind":"premise","index":1},
                {"kind":"mp","major":3,"minor":1},
                {"kind":"premise","index":1}]}"#,
        );
        let e = check_proof(&later).unwrap_err();
        assert_eq!(e.step, 2);
        assert!(matches!(e.kind, ProofErrorKind::DanglingReference(3)));

        let mismatch = proof(
            r#"{"logic":"mbC","premises":["p","r"],"steps":[
                {"kind":"axiom","schema":"Ax1","subst":{"A":"p","B":"q"}},
                {"kind":"premise","index":2},
                {"kind":"mp","major":1,"minor":2}]}"#,
        );
        let e = check_proof(&mismatch).unwrap_err();
        assert_eq!(e.step, 3);
        assert!(matches!(e.kind, ProofErrorKind::AntecedentMismatch { .. }));

        let missing = proof(r#"{"logic":"mbC","steps":[{"kind":"axiom","schema":"Ax1","subst":{"A":"p"}}]}"#);
        assert!(matches!(
            check_proof(&missing).unwrap_err().kind,
            ProofErrorKind::MissingBinding(ref m) if m == "B"
        ));
        let extra = proof(r#"{"logic":"mbC","steps":[{"kind":"axiom","schema":"TND","subst":{"A":"p","B":"q"}}]}"#);
        assert!(matches!(check_proof(&extra).unwrap_err().kind, ProofErrorKind::ExtraBinding(_)));
        let absent = proof(r#"{"logic":"mbC","steps":[{"kind":"axiom","schema":"ciw","subst":{"A":"p"}}]}"#);
        assert!(matches!(check_proof(&absent).unwrap_err().kind, ProofErrorKind::UnknownSchema(_)));
        let wrong = proof(r#"{"logic":"mbC","steps":[{"kind":"axiom","schema":"TND","subst":{"A":"p"}}],"conclusion":"p"}"#);
        assert!(matches!(
            check_proof(&wrong).unwrap_err().kind,
            ProofErrorKind::ConclusionMismatch { .. }
        ));
        let nopremise = proof(r#"{"logic":"mbC","steps":[{"kind":"premise","index":1}]}"#);
        assert_eq!(check_proof(&nopremise).unwrap_err().step, 1);
        let empty = proof(r#"{"logic":"mbC","steps":[]}"#);
        assert_eq!(check_proof(&empty).unwrap_err().step, 0);
        let not_imp = proof(
            r#"{"logic":"mbC","premises":["p"],"steps":[{"kind":"premise","index":1},{"kind":"mp","major":1,"minor":1}]}"#,
        );
        assert!(matches!(check_proof(&not_imp).unwrap_err().kind, ProofErrorKind::NotAnImplication(1)));
    }
}
