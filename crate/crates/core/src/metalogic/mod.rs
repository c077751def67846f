//! Bounded executable checks of the hierarchy's metatheorems. Every check
//! returns a [`WitnessReport`] carrying the evidence it found.

mod algebra;
mod bridge;
mod cross;
mod suites;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::formula::{render, Formula};

pub use algebra::{
    check_congruence, check_gate, check_recovery, check_subalgebra, check_sublogic_inclusion,
    find_maximality_witnesses, gate_instance, recovery_sweep,
};
pub use bridge::check_bivaluation_bridge;
pub use cross::cross_check_semantics;
pub use suites::{
    check_fixed_point_axiom, countermodel_holds, run_property_suite, run_suite, suite_items,
    SequentItem, SuiteParams, SUITES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// One piece of evidence: a formula, the atom values it was evaluated at,
/// and what came out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub assignment: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<serde_json::Value>,
}

impl Witness {
    pub fn new(label: impl Into<String>) -> Witness {
        Witness {
            label: label.into(),
            formula: None,
            assignment: BTreeMap::new(),
            value: None,
            evidence: None,
        }
    }

    pub fn formula(mut self, f: &Formula) -> Witness {
        self.formula = Some(render(f));
        self
    }

    pub fn text(mut self, s: impl Into<String>) -> Witness {
        self.formula = Some(s.into());
        self
    }

    pub fn assign(mut self, atom: &str, value: &str) -> Witness {
        self.assignment.insert(atom.into(), value.into());
        self
    }

    pub fn value(mut self, v: impl Into<String>) -> Witness {
        self.value = Some(v.into());
        self
    }

    pub fn evidence(mut self, e: serde_json::Value) -> Witness {
        self.evidence = Some(e);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub claim: String,
    pub status: Status,
    /// Number of elementary checks performed.
    pub checked: u64,
    pub bounds: BTreeMap<String, u64>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn new(claim: impl Into<String>) -> WitnessReport {
        WitnessReport {
            claim: claim.into(),
            status: Status::Verified,
            checked: 0,
            bounds: BTreeMap::new(),
            witnesses: Vec::new(),
            counterexample: None,
            failures: Vec::new(),
        }
    }

    pub fn bound(mut self, name: &str, value: u64) -> WitnessReport {
        self.bounds.insert(name.into(), value);
        self
    }

    /// Records a failed check; the first counterexample offered is kept.
    pub fn fail(&mut self, what: impl Into<String>, counterexample: Option<serde_json::Value>) {
        self.status = Status::Refuted;
        self.failures.push(what.into());
        if self.counterexample.is_none() {
            self.counterexample = counterexample;
        }
    }

    /// Marks the report inconclusive unless something already failed.
    pub fn exhausted(&mut self, what: impl Into<String>) {
        if self.status != Status::Refuted {
            self.status = Status::Inconclusive;
        }
        self.failures.push(what.into());
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} checks", self.claim, self.status, self.checked)?;
        for (k, v) in &self.bounds {
            write!(f, ", {k}={v}")?;
        }
        writeln!(f, ")")?;
        for w in &self.witnesses {
            write!(f, "  {}", w.label)?;
            if let Some(x) = &w.formula {
                write!(f, ": {x}")?;
            }
            if !w.assignment.is_empty() {
                let a: Vec<String> = w.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, " at {}", a.join(", "))?;
            }
            if let Some(v) = &w.value {
                write!(f, " -> {v}")?;
            }
            writeln!(f)?;
        }
        for x in &self.failures {
            writeln!(f, "  FAILED {x}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}
