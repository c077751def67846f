//! Registry of the logics: Hilbert axiomatizations and their semantics.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Error;
use crate::formula::{enumerate_formulas, Formula, Schema};
use crate::semantics::{Nmatrix, RNmatrix, Restriction, Semantics, SemanticsKind};
use crate::structures;

/// Logics with a fixed name. `mbCci` and `Cie` are aliases of `L:0,0` and
/// `L:0,1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedLogic {
    MbC,
    MbCciw,
    MbCci,
    Cie,
    Cbr,
    Lfi1,
    Lfi3,
    Cpl,
}

impl NamedLogic {
    pub const ALL: [NamedLogic; 8] = [
        NamedLogic::MbC,
        NamedLogic::MbCciw,
        NamedLogic::MbCci,
        NamedLogic::Cie,
        NamedLogic::Cbr,
        NamedLogic::Lfi1,
        NamedLogic::Lfi3,
        NamedLogic::Cpl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedLogic::MbC => "mbC",
            NamedLogic::MbCciw => "mbCciw",
            NamedLogic::MbCci => "mbCci",
            NamedLogic::Cie => "Cie",
            NamedLogic::Cbr => "Cbr",
            NamedLogic::Lfi1 => "LFI1",
            NamedLogic::Lfi3 => "LFI3",
            NamedLogic::Cpl => "CPL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicId {
    Named(NamedLogic),
    /// `L_n^k`
    Param { n: usize, k: usize },
}

impl LogicId {
    pub fn param(n: usize, k: usize) -> LogicId {
        LogicId::Param { n, k }
    }

    /// Resolves aliases to their parametric form.
    pub fn canonical(self) -> LogicId {
        match self {
            LogicId::Named(NamedLogic::MbCci) => LogicId::param(0, 0),
            LogicId::Named(NamedLogic::Cie) => LogicId::param(0, 1),
            other => other,
        }
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicId::Named(l) => f.write_str(l.name()),
            LogicId::Param { n, k } => write!(f, "L:{n},{k}"),
        }
    }
}

impl FromStr for LogicId {
    type Err = Error;

    fn from_str(s: &str) -> Result<LogicId, Error> {
        let t = s.trim();
        if let Some(l) = NamedLogic::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(t))
        {
            return Ok(LogicId::Named(l));
        }
        let unknown = || Error::UnknownLogic(s.to_string());
        let rest = t.strip_prefix("L:").ok_or_else(unknown)?;
        let (n, k) = rest.split_once(',').ok_or_else(unknown)?;
        let n = n.trim().parse().map_err(|_| unknown())?;
        let k = k.trim().parse().map_err(|_| unknown())?;
        Ok(LogicId::param(n, k))
    }
}

/// A named axiom schema. Metavariables are the atoms `A`, `B`, `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub id: String,
    /// Source text, which keeps `<->` unexpanded.
    pub text: String,
    pub schema: Schema,
}

impl AxiomSchema {
    fn new(id: &str, text: &str) -> AxiomSchema {
        AxiomSchema {
            id: id.to_string(),
            text: text.to_string(),
            schema: Schema::parse(text).expect("static schema"),
        }
    }

    /// The source text in Unicode with Greek metavariables.
    pub fn render_pretty(&self) -> String {
        let mut out = String::new();
        let mut rest = self.text.as_str();
        while let Some(c) = rest.chars().next() {
            let (piece, len) = if rest.starts_with("<->") {
                ("↔", 3)
            } else if rest.starts_with("->") {
                ("→", 2)
            } else if rest.starts_with("o ") {
                ("∘", 2)
            } else {
                let p = match c {
                    '~' => "¬",
                    '&' => "∧",
                    '|' => "∨",
                    'A' => "α",
                    'B' => "β",
                    'C' => "γ",
                    _ => {
                        out.push(c);
                        rest = &rest[c.len_utf8()..];
                        continue;
                    }
                };
                (p, 1)
            };
            out.push_str(piece);
            rest = &rest[len..];
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preference {
    Matrix,
    Nmatrix,
    RNmatrix,
    Any,
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preference::Matrix => "matrix",
            Preference::Nmatrix => "nmatrix",
            Preference::RNmatrix => "rnmatrix",
            Preference::Any => "any",
        })
    }
}

impl FromStr for Preference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Preference, Error> {
        match s.to_ascii_lowercase().as_str() {
            "matrix" => Ok(Preference::Matrix),
            "nmatrix" => Ok(Preference::Nmatrix),
            "rnmatrix" => Ok(Preference::RNmatrix),
            "any" => Ok(Preference::Any),
            _ => Err(Error::InvalidStructure(format!(
                "unknown semantics preference `{s}`"
            ))),
        }
    }
}

/// A logic: its Hilbert axioms (with modus ponens as the only rule) and its
/// registered semantics, primary first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicSpec {
    pub id: LogicId,
    pub axioms: Vec<AxiomSchema>,
    pub semantics: Vec<Semantics>,
}

impl LogicSpec {
    pub fn name(&self) -> String {
        self.id.to_string()
    }

    pub fn axiom(&self, id: &str) -> Option<&AxiomSchema> {
        self.axioms.iter().find(|a| a.id == id)
    }

    /// True when the logic has no registered semantics.
    pub fn hilbert_only(&self) -> bool {
        self.semantics.is_empty()
    }

    pub fn semantics_of(&self, pref: Preference) -> Result<Semantics, Error> {
        let want = match pref {
            Preference::Any => None,
            Preference::Matrix => Some(SemanticsKind::Matrix),
            Preference::Nmatrix => Some(SemanticsKind::Nmatrix),
            Preference::RNmatrix => Some(SemanticsKind::RNmatrix),
        };
        self.semantics
            .iter()
            .find(|s| want.is_none_or(|k| s.kind() == k))
            .cloned()
            .ok_or_else(|| Error::Unavailable {
                logic: self.name(),
                preference: pref.to_string(),
            })
    }
}

fn cpl_plus() -> Vec<AxiomSchema> {
    [
        ("Ax1", "A -> B -> A"),
        ("Ax2", "(A -> B -> C) -> (A -> B) -> A -> C"),
        ("Ax3", "A -> B -> A & B"),
        ("Ax4", "A & B -> A"),
        ("Ax5", "A & B -> B"),
        ("Ax6", "A -> A | B"),
        ("Ax7", "B -> A | B"),
        ("Ax8", "(A -> C) -> (B -> C) -> A | B -> C"),
        ("Ax9", "(A -> B) | A"),
    ]
    .into_iter()
    .map(|(i, t)| AxiomSchema::new(i, t))
    .collect()
}

fn circs(n: usize) -> String {
    "o ".repeat(n)
}

fn mbc() -> Vec<AxiomSchema> {
    let mut v = cpl_plus();
    v.push(AxiomSchema::new("TND", "A | ~A"));
    v.push(AxiomSchema::new("bc1", "o A -> A -> ~A -> B"));
    v
}

fn mbcciw() -> Vec<AxiomSchema> {
    let mut v = mbc();
    v.push(AxiomSchema::new("ciw", "o A | A & ~A"));
    v
}

fn cc(n: usize) -> AxiomSchema {
    let id = if n == 0 { "cc".to_string() } else { format!("cc{n}") };
    AxiomSchema::new(&id, &format!("{}A", circs(n + 2)))
}

fn ce_cf() -> [AxiomSchema; 2] {
    [AxiomSchema::new("ce", "A -> ~~A"), AxiomSchema::new("cf", "~~A -> A")]
}

fn ip(j: usize) -> AxiomSchema {
    AxiomSchema::new(
        &format!("ip{j}"),
        &format!("~{c}~A <-> ~{c}A", c = circs(j)),
    )
}

fn lfi3_extra() -> Vec<AxiomSchema> {
    // ∼x is written out as ¬x ∧ ∘x
    [
        ("A1", "~(A & B) <-> ~A | ~B"),
        ("A2", "~(A | B) <-> ~A & ~B"),
        ("A3", "~(A -> B) <-> ~B & ((~~A & o ~A) | ~o A)"),
        (
            "A4",
            "~o (A & B) <-> (~~A & o ~A) & ~o B | ~o A & (~~B & o ~B) | ~o A & ~o B",
        ),
        (
            "A5",
            "~o (A | B) <-> (~A & o A) & ~o B | ~o A & (~B & o B) | ~o A & ~o B",
        ),
        (
            "A6",
            "~o (A -> B) <-> (~~A & o ~A) & ~o B | (~~A & o ~A) & ~o A & (~B & o B) \
             | ~o A & ~o B | (~A & o A) & ~o A & (~B & o B)",
        ),
    ]
    .into_iter()
    .map(|(i, t)| AxiomSchema::new(i, t))
    .collect()
}

fn param_axioms(n: usize, k: usize) -> Vec<AxiomSchema> {
    let mut v = mbcciw();
    v.push(cc(n));
    if k >= 1 {
        v.extend(ce_cf());
    }
    for j in 1..k {
        v.push(ip(j));
    }
    v
}

fn nm(m: Nmatrix) -> Semantics {
    Semantics::nmatrix(m)
}

fn mx(m: Nmatrix) -> Semantics {
    Semantics::matrix(m).expect("deterministic")
}

fn rn(n: usize, k: usize) -> Semantics {
    let base = if k == 0 {
        structures::mbcciw_nmatrix()
    } else {
        structures::cbr_nmatrix()
    };
    let mut r = vec![Restriction::Cc(n)];
    r.extend((1..k).map(Restriction::Ip));
    Semantics::rnmatrix(
        RNmatrix::new(&format!("R{n}^{k}"), Arc::new(base), r).expect("valid restrictions"),
    )
}

/// The full specification of a logic.
pub fn get_logic(id: LogicId) -> LogicSpec {
    let id = id.canonical();
    let (axioms, semantics) = match id {
        LogicId::Named(NamedLogic::MbC) => (mbc(), vec![]),
        LogicId::Named(NamedLogic::MbCciw) => (mbcciw(), vec![nm(structures::mbcciw_nmatrix())]),
        LogicId::Named(NamedLogic::Cbr) => {
            let mut v = mbcciw();
            v.extend(ce_cf());
            (v, vec![nm(structures::cbr_nmatrix())])
        }
        LogicId::Named(NamedLogic::Lfi3) => {
            let mut v = param_axioms(1, 2);
            v.extend(lfi3_extra());
            (v, vec![mx(structures::build_lfi3_twist())])
        }
        LogicId::Named(NamedLogic::Lfi1) => {
            let mut v = param_axioms(1, 2);
            v.extend(lfi3_extra());
            v.push(cc(0));
            (v, vec![mx(structures::lfi1_matrix())])
        }
        LogicId::Named(NamedLogic::Cpl) => {
            let mut v = cpl_plus();
            v.push(AxiomSchema::new("TND", "A | ~A"));
            v.push(AxiomSchema::new("exp", "A -> ~A -> B"));
            v.push(AxiomSchema::new("cons", "o A"));
            (v, vec![mx(structures::cpl_matrix())])
        }
        LogicId::Named(NamedLogic::MbCci | NamedLogic::Cie) => unreachable!("canonicalized"),
        LogicId::Param { n, k } => {
            let mut sems = Vec::new();
            match (n, k) {
                (0, 0) => sems.push(nm(structures::mbcci_nmatrix())),
                (0, 1) => sems.push(nm(structures::cie_nmatrix())),
                (1, 0) => sems.push(nm(structures::m10_nmatrix())),
                (1, 1) => sems.push(nm(structures::m11_nmatrix())),
                (1, 2) => sems.push(nm(structures::m12_nmatrix())),
                _ => {}
            }
            sems.push(rn(n, k));
            (param_axioms(n, k), sems)
        }
    };
    LogicSpec {
        id,
        axioms,
        semantics,
    }
}

/// The requested semantics of a logic, or [`Error::Unavailable`].
pub fn semantics_of(id: LogicId, pref: Preference) -> Result<Semantics, Error> {
    get_logic(id).semantics_of(pref)
}

/// Every axiom instance whose arguments range over all formulas on `atoms`
/// up to `depth`. The count is the pool size raised to the number of
/// metavariables, so keep the bounds small.
pub fn axiom_instances(id: LogicId, atoms: &[&str], depth: usize) -> Vec<Formula> {
    let pool = enumerate_formulas(atoms, depth);
    let mut out = Vec::new();
    for ax in get_logic(id).axioms {
        let k = ax.schema.metavars().len();
        let mut idx = vec![0usize; k];
        loop {
            let args: Vec<Formula> = idx.iter().map(|&i| pool[i].clone()).collect();
            out.push(ax.schema.apply(&args).expect("arity matches"));
            let mut pos = 0;
            while pos < k {
                idx[pos] += 1;
                if idx[pos] < pool.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    out
}
