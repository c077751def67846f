use crate::error::Error;
use crate::formula::{subformula_closure, Connective, Formula};
use crate::logics::LogicId;
use crate::semantics::{Assignment, ClosureSet, Node, Snapshot};
use crate::structures::m10_nmatrix;

/// A 0/1 valuation on a finite subformula-closed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiValuation {
    formulas: Vec<Formula>,
    values: Vec<bool>,
}

impl BiValuation {
    pub fn new(entries: Vec<(Formula, bool)>) -> BiValuation {
        let (formulas, values) = entries.into_iter().unzip();
        BiValuation { formulas, values }
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn get(&self, f: &Formula) -> Option<bool> {
        self.formulas.iter().position(|g| g == f).map(|i| self.values[i])
    }
}

#[derive(Debug, Clone, Copy)]
enum Clause {
    Bin(Connective, usize, usize, usize),
    Neg(usize, usize),
    /// `v(∘α) = 1 iff v(α) = 0 or v(¬α) = 0`
    ConCiw { circ: usize, a: usize, neg: usize },
    /// `v(¬∘∘α) = 1 iff v(∘∘α) = 0`
    Cc1 { neg: usize, cc: usize },
    /// `v(¬¬α) = v(α)`
    Dn { nn: usize, a: usize },
}

impl Clause {
    fn holds(self, v: &[bool]) -> bool {
        match self {
            Clause::Bin(c, i, a, b) => {
                v[i] == match c {
                    Connective::And => v[a] && v[b],
                    Connective::Or => v[a] || v[b],
                    _ => !v[a] || v[b],
                }
            }
            Clause::Neg(i, a) => v[i] || v[a],
            Clause::ConCiw { circ, a, neg } => v[circ] == (!v[a] || !v[neg]),
            Clause::Cc1 { neg, cc } => v[neg] == !v[cc],
            Clause::Dn { nn, a } => v[nn] == v[a],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Clause::Bin(Connective::And, ..) => "vAnd",
            Clause::Bin(Connective::Or, ..) => "vOr",
            Clause::Bin(..) => "vImp",
            Clause::Neg(..) => "vNeg",
            Clause::ConCiw { .. } => "vConCiw",
            Clause::Cc1 { .. } => "vCc1",
            Clause::Dn { .. } => "vdn",
        }
    }

    fn subject(self) -> usize {
        match self {
            Clause::Bin(_, i, ..) | Clause::Neg(i, _) => i,
            Clause::ConCiw { circ, .. } => circ,
            Clause::Cc1 { neg, .. } => neg,
            Clause::Dn { nn, .. } => nn,
        }
    }
}

fn with_dn(id: LogicId) -> Result<bool, Error> {
    match id.canonical() {
        LogicId::Param { n: 1, k: 0 } => Ok(false),
        LogicId::Param { n: 1, k: 1 } => Ok(true),
        other => Err(Error::Unavailable {
            logic: other.to_string(),
            preference: "bivaluation".into(),
        }),
    }
}

/// The legal bivaluations of one logic on one closure set, with each
/// clause checked as soon as its last formula is assigned.
pub struct BivaluationSpace {
    cs: ClosureSet,
    checks_at: Vec<Vec<Clause>>,
}

impl BivaluationSpace {
    /// `id` must be `L:1,0` or `L:1,1`; `closure` must be subformula-closed.
    pub fn new(id: LogicId, closure: &[Formula]) -> Result<BivaluationSpace, Error> {
        let dn = with_dn(id)?;
        let cs = ClosureSet::from_closed(closure)?;
        let mut checks_at: Vec<Vec<Clause>> = vec![Vec::new(); cs.len()];
        for (i, node) in cs.nodes().iter().enumerate() {
            match *node {
                Node::Atom => {}
                Node::Binary(c, a, b) => checks_at[i].push(Clause::Bin(c, i, a, b)),
                Node::Unary(Connective::Neg, a) => {
                    checks_at[i].push(Clause::Neg(i, a));
                    if let Node::Unary(Connective::Circ, inner) = cs.nodes()[a] {
                        if let Node::Unary(Connective::Circ, _) = cs.nodes()[inner] {
                            checks_at[i].push(Clause::Cc1 { neg: i, cc: a });
                        }
                    }
                    if let Node::Unary(Connective::Neg, inner) = cs.nodes()[a] {
                        if dn {
                            checks_at[i].push(Clause::Dn { nn: i, a: inner });
                        }
                    }
                }
                Node::Unary(_, a) => {
                    if let Some(neg) = cs.neg_of(a) {
                        checks_at[i.max(neg)].push(Clause::ConCiw { circ: i, a, neg });
                    }
                }
            }
        }
        Ok(BivaluationSpace { cs, checks_at })
    }

    pub fn closure(&self) -> &ClosureSet {
        &self.cs
    }

    fn first_violation(&self, v: &[bool]) -> Option<Clause> {
        self.checks_at
            .iter()
            .flatten()
            .copied()
            .find(|c| !c.holds(v))
    }

    /// Calls `visit` on every legal bivaluation (values in closure order)
    /// whose node `i` value is allowed by `fixed[i]`, until `visit` returns
    /// false. Returns false if stopped early.
    pub fn for_each<F>(&self, fixed: &[Option<bool>], mut visit: F) -> bool
    where
        F: FnMut(&[bool]) -> bool,
    {
        let mut vals = vec![false; self.cs.len()];
        self.dfs(0, fixed, &mut vals, &mut visit)
    }

    fn dfs<F>(&self, i: usize, fixed: &[Option<bool>], vals: &mut [bool], visit: &mut F) -> bool
    where
        F: FnMut(&[bool]) -> bool,
    {
        if i == vals.len() {
            return visit(vals);
        }
        for b in [false, true] {
            if fixed.get(i).copied().flatten().is_some_and(|x| x != b) {
                continue;
            }
            vals[i] = b;
            if self.checks_at[i].iter().all(|c| c.holds(vals)) && !self.dfs(i + 1, fixed, vals, visit)
            {
                return false;
            }
        }
        true
    }

    fn to_bivaluation(&self, vals: &[bool]) -> BiValuation {
        BiValuation::new(self.cs.formulas().iter().cloned().zip(vals.iter().copied()).collect())
    }
}

/// Checks every clause instance inside the valuation's domain.
pub fn check_bivaluation(id: LogicId, v: &BiValuation) -> Result<(), Error> {
    let space = BivaluationSpace::new(id, v.formulas())?;
    let vals: Vec<bool> = space
        .cs
        .formulas()
        .iter()
        .map(|f| v.get(f).expect("same set"))
        .collect();
    match space.first_violation(&vals) {
        None => Ok(()),
        Some(c) => Err(Error::ClauseViolation {
            clause: c.name().into(),
            formula: space.cs.formula(c.subject()).to_string(),
        }),
    }
}

/// All legal bivaluations on `closure`.
pub fn enumerate_bivaluations(id: LogicId, closure: &[Formula]) -> Result<Vec<BiValuation>, Error> {
    let space = BivaluationSpace::new(id, closure)?;
    let mut out = Vec::new();
    space.for_each(&[], |v| {
        out.push(space.to_bivaluation(v));
        true
    });
    Ok(out)
}

/// The closure of `fs` together with `¬γ` and `¬∘γ` for each member `γ`.
pub fn neg_extension(fs: &[Formula]) -> Vec<Formula> {
    let s = subformula_closure(fs);
    let extra: Vec<Formula> = s
        .iter()
        .flat_map(|g| [Formula::neg(g.clone()), Formula::neg(Formula::circ(g.clone()))])
        .collect();
    subformula_closure(s.iter().chain(&extra))
}

/// A legal bivaluation designating the premises and not the goal, over the
/// negation extension of their closure.
pub fn bivaluation_refutes(
    id: LogicId,
    premises: &[Formula],
    goal: &Formula,
) -> Result<Option<BiValuation>, Error> {
    let mut all = premises.to_vec();
    all.push(goal.clone());
    let space = BivaluationSpace::new(id, &neg_extension(&all))?;
    let mut fixed = vec![None; space.cs.len()];
    for p in premises {
        fixed[space.cs.index_of(p).expect("in closure")] = Some(true);
    }
    let g = space.cs.index_of(goal).expect("in closure");
    if fixed[g] == Some(true) {
        return Ok(None);
    }
    fixed[g] = Some(false);
    let mut found = None;
    space.for_each(&fixed, |v| {
        found = Some(space.to_bivaluation(v));
        false
    });
    Ok(found)
}

/// `h(α) = (v(α), v(¬α), v(¬∘α))` for each `α` in `s`, as an assignment
/// over the five-valued domain.
pub fn snapshot_embedding(v: &BiValuation, s: &[Formula]) -> Result<Assignment, Error> {
    let m = m10_nmatrix();
    let d = m.domain();
    let get = |f: &Formula| v.get(f).ok_or_else(|| Error::NotInDomain(f.to_string()));
    let mut entries = Vec::with_capacity(s.len());
    for a in s {
        let na = Formula::neg(a.clone());
        let nca = Formula::neg(Formula::circ(a.clone()));
        let snap = Snapshot(vec![get(a)?, get(&na)?, get(&nca)?]);
        let val = d.value_of_snapshot(&snap).ok_or_else(|| {
            Error::InvalidStructure(format!("{snap} for `{a}` is not a snapshot"))
        })?;
        entries.push((a.clone(), val));
    }
    Ok(Assignment::new(d.clone(), entries))
}
