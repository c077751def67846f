//! Finite (restricted) non-deterministic matrices and the consequence
//! decision procedure.

mod closure;
mod engine;
mod verdict;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::formula::{Connective, Formula};

pub use closure::{restriction_closure, ClosureSet, Constraint, Node};
pub use engine::{
    check_consequence, check_consequence_with, enumerate_legal_assignments, LegalAssignments,
};
pub use verdict::{restriction_holds, Assignment, Countermodel, Verdict};

/// Index of a truth value in its [`Domain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Value(pub u8);

impl Value {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of truth values of one domain, as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ValueSet(pub u64);

impl ValueSet {
    pub const EMPTY: ValueSet = ValueSet(0);

    pub fn singleton(v: Value) -> ValueSet {
        ValueSet(1 << v.0)
    }

    pub fn full(n: usize) -> ValueSet {
        if n >= 64 {
            ValueSet(u64::MAX)
        } else {
            ValueSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: Value) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    pub fn insert(&mut self, v: Value) {
        self.0 |= 1 << v.0;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn intersect(self, other: ValueSet) -> ValueSet {
        ValueSet(self.0 & other.0)
    }

    pub fn union(self, other: ValueSet) -> ValueSet {
        ValueSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ValueSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// The single member, if there is exactly one.
    pub fn single(self) -> Option<Value> {
        (self.len() == 1).then(|| Value(self.0.trailing_zeros() as u8))
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = Value> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            Some(Value(v as u8))
        })
    }
}

impl FromIterator<Value> for ValueSet {
    fn from_iter<I: IntoIterator<Item = Value>>(iter: I) -> Self {
        let mut s = ValueSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

/// A bit tuple recording the 0/1 status of a formula and some of its
/// compounds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Snapshot(pub Vec<bool>);

impl Snapshot {
    pub fn from_bits(bits: &[u8]) -> Snapshot {
        Snapshot(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }
}

impl fmt::Display for Snapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Snapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered list of named truth values, optionally backed by snapshots.
#[derive(Clone, PartialEq, Eq)]
pub struct Domain {
    names: Arc<[String]>,
    snapshots: Option<Arc<[Snapshot]>>,
}

impl Domain {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Domain, Error> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidDomain("no values".into()));
        }
        if names.len() > 64 {
            return Err(Error::InvalidDomain(format!(
                "{} values exceed the supported maximum of 64",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidDomain("empty value name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidDomain(format!("duplicate value name `{n}`")));
            }
        }
        Ok(Domain {
            names: names.into(),
            snapshots: None,
        })
    }

    pub fn with_snapshots<S: AsRef<str>>(
        names: &[S],
        snapshots: Vec<Snapshot>,
    ) -> Result<Domain, Error> {
        let mut d = Domain::new(names)?;
        if snapshots.len() != d.len() {
            return Err(Error::InvalidDomain(format!(
                "{} names but {} snapshots",
                d.len(),
                snapshots.len()
            )));
        }
        let w = snapshots[0].width();
        for (i, s) in snapshots.iter().enumerate() {
            if s.width() != w {
                return Err(Error::InvalidDomain("snapshots of unequal width".into()));
            }
            if snapshots[..i].contains(s) {
                return Err(Error::InvalidDomain(format!("duplicate snapshot {s}")));
            }
        }
        d.snapshots = Some(snapshots.into());
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = Value> {
        (0..self.len() as u8).map(Value)
    }

    pub fn all(&self) -> ValueSet {
        ValueSet::full(self.len())
    }

    pub fn name(&self, v: Value) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn value(&self, name: &str) -> Option<Value> {
        self.names.iter().position(|n| n == name).map(|i| Value(i as u8))
    }

    pub fn value_or_err(&self, name: &str) -> Result<Value, Error> {
        self.value(name)
            .ok_or_else(|| Error::UnknownValue(name.to_string()))
    }

    pub fn set(&self, names: &[&str]) -> Result<ValueSet, Error> {
        names.iter().map(|n| self.value_or_err(n)).collect()
    }

    pub fn snapshot(&self, v: Value) -> Option<&Snapshot> {
        self.snapshots.as_ref().map(|s| &s[v.index()])
    }

    pub fn snapshot_width(&self) -> Option<usize> {
        self.snapshots.as_ref().map(|s| s[0].width())
    }

    pub fn value_of_snapshot(&self, snap: &Snapshot) -> Option<Value> {
        self.snapshots
            .as_ref()?
            .iter()
            .position(|s| s == snap)
            .map(|i| Value(i as u8))
    }

    /// Renders a value set as `{T, t}`.
    pub fn format_set(&self, s: ValueSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// A non-deterministic matrix: a domain, a designated subset, and a
/// multioperation for every connective. A logical matrix is the special
/// case where every cell is a singleton.
#[derive(Clone, PartialEq, Eq)]
pub struct Nmatrix {
    name: String,
    domain: Domain,
    designated: ValueSet,
    unary: [Vec<ValueSet>; 2],
    binary: [Vec<ValueSet>; 3],
}

fn unary_slot(c: Connective) -> usize {
    match c {
        Connective::Neg => 0,
        Connective::Circ => 1,
        _ => unreachable!("{c} is not unary"),
    }
}

fn binary_slot(c: Connective) -> usize {
    match c {
        Connective::And => 0,
        Connective::Or => 1,
        Connective::Imp => 2,
        _ => unreachable!("{c} is not binary"),
    }
}

impl Nmatrix {
    /// Builds an Nmatrix whose cells are produced by `cell`, which receives
    /// one argument for unary connectives and two for binary ones.
    pub fn from_fn<F>(
        name: &str,
        domain: Domain,
        designated: ValueSet,
        mut cell: F,
    ) -> Result<Nmatrix, Error>
    where
        F: FnMut(Connective, &[Value]) -> Result<ValueSet, Error>,
    {
        let n = domain.len();
        let all = domain.all();
        if designated.is_empty() || designated == all || !designated.is_subset(all) {
            return Err(Error::InvalidStructure(format!(
                "{name}: designated set must be a nonempty proper subset of the domain"
            )));
        }
        let check = |c: Connective, args: &[Value], s: ValueSet| -> Result<ValueSet, Error> {
            if s.is_empty() || !s.is_subset(all) {
                let inputs: Vec<&str> = args.iter().map(|v| domain.name(*v)).collect();
                return Err(Error::EmptyCell {
                    connective: c.name().into(),
                    inputs: inputs.join(", "),
                });
            }
            Ok(s)
        };
        let mut unary: [Vec<ValueSet>; 2] = Default::default();
        for c in Connective::UNARY {
            for a in domain.values() {
                let s = cell(c, &[a])?;
                unary[unary_slot(c)].push(check(c, &[a], s)?);
            }
        }
        let mut binary: [Vec<ValueSet>; 3] = Default::default();
        for c in Connective::BINARY {
            for a in domain.values() {
                for b in domain.values() {
                    let s = cell(c, &[a, b])?;
                    binary[binary_slot(c)].push(check(c, &[a, b], s)?);
                }
            }
        }
        debug_assert!(binary[0].len() == n * n);
        Ok(Nmatrix {
            name: name.to_string(),
            domain,
            designated,
            unary,
            binary,
        })
    }

    /// Builds a deterministic matrix from value-level operations.
    pub fn matrix_from_fn<F>(
        name: &str,
        domain: Domain,
        designated: ValueSet,
        mut op: F,
    ) -> Result<Nmatrix, Error>
    where
        F: FnMut(Connective, &[Value]) -> Value,
    {
        Nmatrix::from_fn(name, domain, designated, |c, args| {
            Ok(ValueSet::singleton(op(c, args)))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Nmatrix {
        self.name = name.to_string();
        self
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn designated(&self) -> ValueSet {
        self.designated
    }

    pub fn is_designated(&self, v: Value) -> bool {
        self.designated.contains(v)
    }

    pub fn unary(&self, c: Connective, a: Value) -> ValueSet {
        self.unary[unary_slot(c)][a.index()]
    }

    pub fn binary(&self, c: Connective, a: Value, b: Value) -> ValueSet {
        self.binary[binary_slot(c)][a.index() * self.domain.len() + b.index()]
    }

    pub fn cell(&self, c: Connective, args: &[Value]) -> ValueSet {
        if c.is_unary() {
            self.unary(c, args[0])
        } else {
            self.binary(c, args[0], args[1])
        }
    }

    /// True when every cell is a singleton.
    pub fn is_deterministic(&self) -> bool {
        self.unary
            .iter()
            .chain(self.binary.iter())
            .all(|t| t.iter().all(|s| s.len() == 1))
    }

    /// The sub-Nmatrix on the named values, keeping cells intersected with
    /// the subset. Fails if some cell would become empty; for matrices this
    /// means the subset is not a subalgebra.
    pub fn restrict(&self, name: &str, values: &[&str]) -> Result<Nmatrix, Error> {
        let keep: Vec<Value> = values
            .iter()
            .map(|n| self.domain.value_or_err(n))
            .collect::<Result<_, _>>()?;
        let domain = match &self.domain.snapshots {
            Some(snaps) => Domain::with_snapshots(
                values,
                keep.iter().map(|v| snaps[v.index()].clone()).collect(),
            )?,
            None => Domain::new(values)?,
        };
        let to_new = |s: ValueSet| -> ValueSet {
            keep.iter()
                .enumerate()
                .filter(|(_, v)| s.contains(**v))
                .map(|(i, _)| Value(i as u8))
                .collect()
        };
        let designated = to_new(self.designated);
        Nmatrix::from_fn(name, domain, designated, |c, args| {
            let orig: Vec<Value> = args.iter().map(|v| keep[v.index()]).collect();
            Ok(to_new(self.cell(c, &orig)))
        })
    }
}

impl fmt::Debug for Nmatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Nmatrix")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

/// A restriction schema on valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Restriction {
    /// If `∘^n α` takes a classical value (T or F) then `∘^(n+1) α` is T.
    Cc(usize),
    /// `∘^j α` and `∘^j ¬α` take the same value; `j ≥ 1`.
    Ip(usize),
}

impl Restriction {
    pub fn validate(self) -> Result<Restriction, Error> {
        match self {
            Restriction::Ip(0) => Err(Error::InvalidRestriction(
                "IP(j) requires j >= 1".into(),
            )),
            r => Ok(r),
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Restriction::Cc(n) => write!(f, "CC({n})"),
            Restriction::Ip(j) => write!(f, "IP({j})"),
        }
    }
}

/// An Nmatrix together with restrictions on its valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RNmatrix {
    name: String,
    base: Arc<Nmatrix>,
    restrictions: Vec<Restriction>,
}

impl RNmatrix {
    pub fn new(
        name: &str,
        base: Arc<Nmatrix>,
        restrictions: Vec<Restriction>,
    ) -> Result<RNmatrix, Error> {
        for r in &restrictions {
            r.validate()?;
            if let Restriction::Cc(_) = r {
                for v in ["T", "F"] {
                    if base.domain().value(v).is_none() {
                        return Err(Error::InvalidRestriction(format!(
                            "{r} needs a value named `{v}` in {}",
                            base.name()
                        )));
                    }
                }
            }
        }
        Ok(RNmatrix {
            name: name.to_string(),
            base,
            restrictions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Nmatrix {
        &self.base
    }

    pub fn restrictions(&self) -> &[Restriction] {
        &self.restrictions
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsKind {
    Matrix,
    Nmatrix,
    RNmatrix,
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsKind::Matrix => "matrix",
            SemanticsKind::Nmatrix => "nmatrix",
            SemanticsKind::RNmatrix => "rnmatrix",
        })
    }
}

/// A semantics a consequence check can run against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Semantics {
    Matrix(Arc<Nmatrix>),
    Nmatrix(Arc<Nmatrix>),
    RNmatrix(Arc<RNmatrix>),
}

impl Semantics {
    /// Wraps a deterministic Nmatrix as a matrix semantics.
    pub fn matrix(m: Nmatrix) -> Result<Semantics, Error> {
        if !m.is_deterministic() {
            return Err(Error::InvalidStructure(format!(
                "{} has non-singleton cells",
                m.name()
            )));
        }
        Ok(Semantics::Matrix(Arc::new(m)))
    }

    pub fn nmatrix(m: Nmatrix) -> Semantics {
        Semantics::Nmatrix(Arc::new(m))
    }

    pub fn rnmatrix(r: RNmatrix) -> Semantics {
        Semantics::RNmatrix(Arc::new(r))
    }

    pub fn kind(&self) -> SemanticsKind {
        match self {
            Semantics::Matrix(_) => SemanticsKind::Matrix,
            Semantics::Nmatrix(_) => SemanticsKind::Nmatrix,
            Semantics::RNmatrix(_) => SemanticsKind::RNmatrix,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Semantics::Matrix(m) | Semantics::Nmatrix(m) => m.name(),
            Semantics::RNmatrix(r) => r.name(),
        }
    }

    /// The underlying Nmatrix (the base, for restricted ones).
    pub fn nmatrix_ref(&self) -> &Nmatrix {
        match self {
            Semantics::Matrix(m) | Semantics::Nmatrix(m) => m,
            Semantics::RNmatrix(r) => r.base(),
        }
    }

    pub fn restrictions(&self) -> &[Restriction] {
        match self {
            Semantics::RNmatrix(r) => r.restrictions(),
            _ => &[],
        }
    }

    pub fn domain(&self) -> &Domain {
        self.nmatrix_ref().domain()
    }
}

/// Compositional evaluation in a deterministic matrix.
pub fn eval_matrix<F>(m: &Nmatrix, atoms: F, f: &Formula) -> Result<Value, Error>
where
    F: Fn(&str) -> Option<Value> + Copy,
{
    let cell = |c: Connective, args: &[Value]| -> Result<Value, Error> {
        let s = m.cell(c, args);
        s.single().ok_or_else(|| {
            let inputs: Vec<&str> = args.iter().map(|v| m.domain().name(*v)).collect();
            Error::NonDeterministic {
                connective: c.name().into(),
                inputs: inputs.join(", "),
            }
        })
    };
    match f {
        Formula::Atom(n) => atoms(n).ok_or_else(|| Error::MissingAtom(n.to_string())),
        Formula::Neg(a) => cell(Connective::Neg, &[eval_matrix(m, atoms, a)?]),
        Formula::Circ(a) => cell(Connective::Circ, &[eval_matrix(m, atoms, a)?]),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            let c = f.connective().expect("binary");
            let a = eval_matrix(m, atoms, l)?;
            let b = eval_matrix(m, atoms, r)?;
            cell(c, &[a, b])
        }
    }
}
