use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::Error;
use crate::formula::{render, Formula};

use super::closure::{restriction_closure, ClosureSet, Constraint, Node};
use super::{Domain, Semantics, Value};

/// Values assigned to a finite formula set, in closure order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    domain: Domain,
    formulas: Vec<Formula>,
    values: Vec<Value>,
}

impl Assignment {
    pub fn new(domain: Domain, entries: Vec<(Formula, Value)>) -> Assignment {
        let (formulas, values) = entries.into_iter().unzip();
        Assignment {
            domain,
            formulas,
            values,
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn get(&self, f: &Formula) -> Option<Value> {
        self.formulas
            .iter()
            .position(|g| g == f)
            .map(|i| self.values[i])
    }

    pub fn name_of(&self, f: &Formula) -> Option<&str> {
        self.get(f).map(|v| self.domain.name(v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, Value)> {
        self.formulas.iter().zip(self.values.iter().copied())
    }

    /// Whether the assignment respects every cell of `sem` and every
    /// restriction instance over its formula set.
    pub fn is_legal(&self, sem: &Semantics) -> Result<bool, Error> {
        let nm = sem.nmatrix_ref();
        let cs = ClosureSet::from_closed(&self.formulas)?;
        let val = |i: usize| self.get(cs.formula(i)).expect("same formula set");
        for (i, node) in cs.nodes().iter().enumerate() {
            let ok = match *node {
                Node::Atom => true,
                Node::Unary(c, a) => nm.unary(c, val(a)).contains(val(i)),
                Node::Binary(c, a, b) => nm.binary(c, val(a), val(b)).contains(val(i)),
            };
            if !ok {
                return Ok(false);
            }
        }
        for c in restriction_closure(sem.restrictions(), &self.formulas)? {
            if !restriction_holds(&c, self)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether `a` satisfies the constraint. CC reads the values named `T` and
/// `F`.
pub fn restriction_holds(c: &Constraint, a: &Assignment) -> Result<bool, Error> {
    let get = |f: &Formula| a.get(f).ok_or_else(|| Error::NotInDomain(f.to_string()));
    match c {
        Constraint::Cc { lower, upper } => {
            let d = a.domain();
            let t = d.value_or_err("T")?;
            let f = d.value_or_err("F")?;
            let lo = get(lower)?;
            Ok(!(lo == t || lo == f) || get(upper)? == t)
        }
        Constraint::Ip { plain, negated } => Ok(get(plain)? == get(negated)?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub assignment: Assignment,
    pub goal_value: Value,
}

/// Outcome of a consequence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Refuted(Countermodel),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Verdict::Valid => None,
            Verdict::Refuted(c) => Some(c),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict serializes")
    }
}

struct AssignmentJson<'a>(&'a Assignment);

impl Serialize for AssignmentJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let a = self.0;
        let mut m = s.serialize_map(Some(a.len()))?;
        for (f, v) in a.iter() {
            m.serialize_entry(&render(f), a.domain().name(v))?;
        }
        m.end()
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Valid => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("status", "valid")?;
                m.end()
            }
            Verdict::Refuted(c) => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("status", "refuted")?;
                m.serialize_entry("assignment", &AssignmentJson(&c.assignment))?;
                m.serialize_entry("goal_value", c.assignment.domain().name(c.goal_value))?;
                m.end()
            }
        }
    }
}
