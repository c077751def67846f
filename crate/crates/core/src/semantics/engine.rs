use std::collections::HashSet;

use crate::error::Error;
use crate::formula::Formula;

use super::closure::{ClosureSet, Constraint, Node};
use super::verdict::{Assignment, Countermodel, Verdict};
use super::{Nmatrix, Restriction, Semantics, Value, ValueSet};

/// A closure with its constraints compiled to per-node checks.
pub(crate) struct Problem<'a> {
    nm: &'a Nmatrix,
    cs: ClosureSet,
    /// CC instances keyed by their upper node: the lower node.
    cc_at: Vec<Vec<usize>>,
    /// IP instances keyed by their later node: the earlier node.
    ip_at: Vec<Vec<usize>>,
    classical: ValueSet,
    top: ValueSet,
}

impl<'a> Problem<'a> {
    pub(crate) fn new(
        nm: &'a Nmatrix,
        cs: ClosureSet,
        restrictions: &[Restriction],
    ) -> Result<Problem<'a>, Error> {
        let n = cs.len();
        let mut cc_at = vec![Vec::new(); n];
        let mut ip_at = vec![Vec::new(); n];
        let instances = cs.indexed_constraints(restrictions);
        for &(r, a, b) in &instances {
            match r {
                Restriction::Cc(_) => cc_at[b].push(a),
                Restriction::Ip(_) => {
                    if a != b {
                        ip_at[a.max(b)].push(a.min(b));
                    }
                }
            }
        }
        let (classical, top) = if restrictions.iter().any(|r| matches!(r, Restriction::Cc(_))) {
            let d = nm.domain();
            let t = d.value_or_err("T")?;
            let f = d.value_or_err("F")?;
            (
                [t, f].into_iter().collect(),
                ValueSet::singleton(t),
            )
        } else {
            (ValueSet::EMPTY, ValueSet::EMPTY)
        };
        Ok(Problem {
            nm,
            cs,
            cc_at,
            ip_at,
            classical,
            top,
        })
    }

    pub(crate) fn closure(&self) -> &ClosureSet {
        &self.cs
    }

    fn candidates(&self, i: usize, vals: &[u8]) -> ValueSet {
        let mut s = match self.cs.nodes()[i] {
            Node::Atom => self.nm.domain().all(),
            Node::Unary(c, a) => self.nm.unary(c, Value(vals[a])),
            Node::Binary(c, a, b) => self.nm.binary(c, Value(vals[a]), Value(vals[b])),
        };
        for &lo in &self.cc_at[i] {
            if self.classical.contains(Value(vals[lo])) {
                s = s.intersect(self.top);
            }
        }
        for &o in &self.ip_at[i] {
            s = s.intersect(ValueSet::singleton(Value(vals[o])));
        }
        s
    }

    /// For each position `i`, the earlier nodes whose values the search
    /// from `i` onward still reads.
    fn frontiers(&self) -> Vec<Vec<usize>> {
        let n = self.cs.len();
        let mut last_use: Vec<usize> = (0..n).collect();
        for i in 0..n {
            let mut uses = |j: usize| last_use[j] = last_use[j].max(i);
            match self.cs.nodes()[i] {
                Node::Atom => {}
                Node::Unary(_, a) => uses(a),
                Node::Binary(_, a, b) => {
                    uses(a);
                    uses(b);
                }
            }
            for &j in self.cc_at[i].iter().chain(&self.ip_at[i]) {
                uses(j);
            }
        }
        (0..n)
            .map(|i| (0..i).filter(|&j| last_use[j] >= i).collect())
            .collect()
    }

    fn assignment(&self, vals: &[u8]) -> Assignment {
        Assignment::new(
            self.nm.domain().clone(),
            self.cs
                .formulas()
                .iter()
                .cloned()
                .zip(vals.iter().map(|&v| Value(v)))
                .collect(),
        )
    }

    /// First legal assignment (in domain-order DFS) whose node `i` value lies
    /// in `allowed[i]` for every `i`.
    pub(crate) fn search(&self, allowed: &[ValueSet]) -> Option<Assignment> {
        let n = self.cs.len();
        let mut s = Search {
            p: self,
            allowed,
            frontiers: self.frontiers(),
            vals: vec![0; n],
            failed: HashSet::new(),
        };
        s.dfs(0).then(|| self.assignment(&s.vals))
    }
}

struct Search<'p, 'a> {
    p: &'p Problem<'a>,
    allowed: &'p [ValueSet],
    frontiers: Vec<Vec<usize>>,
    vals: Vec<u8>,
    failed: HashSet<(usize, Vec<u8>)>,
}

impl Search<'_, '_> {
    fn dfs(&mut self, i: usize) -> bool {
        if i == self.vals.len() {
            return true;
        }
        let key = (
            i,
            self.frontiers[i].iter().map(|&j| self.vals[j]).collect::<Vec<u8>>(),
        );
        if self.failed.contains(&key) {
            return false;
        }
        let cands = self.p.candidates(i, &self.vals).intersect(self.allowed[i]);
        for v in cands.iter() {
            self.vals[i] = v.0;
            if self.dfs(i + 1) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}

/// Decides `premises ⊨ goal` in `sem`.
pub fn check_consequence(sem: &Semantics, premises: &[Formula], goal: &Formula) -> Verdict {
    check_consequence_with(sem, premises, goal, &[])
}

/// As [`check_consequence`], with the restriction closure taken over the
/// subformulas of premises, goal and `extra`. For unrestricted semantics the
/// extra formulas cannot change the verdict.
pub fn check_consequence_with(
    sem: &Semantics,
    premises: &[Formula],
    goal: &Formula,
    extra: &[Formula],
) -> Verdict {
    if premises.contains(goal) {
        return Verdict::Valid;
    }
    let nm = sem.nmatrix_ref();
    let cs = ClosureSet::new(premises.iter().chain([goal]).chain(extra));
    let mut allowed = vec![nm.domain().all(); cs.len()];
    for p in premises {
        let i = cs.index_of(p).expect("premise in closure");
        allowed[i] = allowed[i].intersect(nm.designated());
    }
    let g = cs.index_of(goal).expect("goal in closure");
    allowed[g] = allowed[g].intersect(ValueSet(!nm.designated().0).intersect(nm.domain().all()));
    let problem =
        Problem::new(nm, cs, sem.restrictions()).expect("semantics restrictions were validated");
    match problem.search(&allowed) {
        None => Verdict::Valid,
        Some(assignment) => {
            let goal_value = assignment.values()[g];
            Verdict::Refuted(Countermodel {
                assignment,
                goal_value,
            })
        }
    }
}

/// Every legal assignment of `closure` in `nm` satisfying `constraints`.
///
/// CC constraints are read with the values named `T` and `F`.
pub fn enumerate_legal_assignments<'a>(
    nm: &'a Nmatrix,
    closure: &[Formula],
    constraints: &[Constraint],
) -> Result<LegalAssignments<'a>, Error> {
    let cs = ClosureSet::from_closed(closure)?;
    let n = cs.len();
    let mut cc_at = vec![Vec::new(); n];
    let mut ip_at = vec![Vec::new(); n];
    let idx = |f: &Formula| cs.index_of(f).ok_or_else(|| Error::NotInDomain(f.to_string()));
    let mut has_cc = false;
    for c in constraints {
        match c {
            Constraint::Cc { lower, upper } => {
                let (a, b) = (idx(lower)?, idx(upper)?);
                if cs.circ_of(a) != Some(b) {
                    return Err(Error::InvalidRestriction(format!(
                        "`{upper}` is not the consistency of `{lower}`"
                    )));
                }
                has_cc = true;
                cc_at[b].push(a);
            }
            Constraint::Ip { plain, negated } => {
                let (a, b) = (idx(plain)?, idx(negated)?);
                if a != b {
                    ip_at[a.max(b)].push(a.min(b));
                }
            }
        }
    }
    let (classical, top) = if has_cc {
        let d = nm.domain();
        let t = d.value_or_err("T")?;
        let f = d.value_or_err("F")?;
        ([t, f].into_iter().collect(), ValueSet::singleton(t))
    } else {
        (ValueSet::EMPTY, ValueSet::EMPTY)
    };
    Ok(LegalAssignments {
        problem: Problem {
            nm,
            cs,
            cc_at,
            ip_at,
            classical,
            top,
        },
        stack: Vec::new(),
        vals: vec![0; n],
        started: false,
    })
}

/// Iterator over legal assignments in lexicographic domain order.
pub struct LegalAssignments<'a> {
    problem: Problem<'a>,
    stack: Vec<ValueSet>,
    vals: Vec<u8>,
    started: bool,
}

impl LegalAssignments<'_> {
    pub fn closure(&self) -> &[Formula] {
        self.problem.closure().formulas()
    }
}

impl Iterator for LegalAssignments<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let n = self.vals.len();
        if !self.started {
            self.started = true;
            if n == 0 {
                return Some(self.problem.assignment(&[]));
            }
            self.stack.push(self.problem.candidates(0, &self.vals));
        }
        while let Some(i) = self.stack.len().checked_sub(1) {
            let top = &mut self.stack[i];
            let Some(v) = top.iter().next() else {
                self.stack.pop();
                continue;
            };
            top.0 &= top.0 - 1;
            self.vals[i] = v.0;
            if i + 1 == n {
                return Some(self.problem.assignment(&self.vals));
            }
            let next = self.problem.candidates(i + 1, &self.vals);
            self.stack.push(next);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, subformula_closure};
    use crate::semantics::{Domain, RNmatrix};
    use crate::formula::Connective;
    use std::sync::Arc;

    /// Three-valued Nmatrix with ¬ and ∘ non-deterministic, for engine tests.
    fn m0() -> Nmatrix {
        let d = Domain::new(&["T", "t", "F"]).unwrap();
        let tt = d.set(&["T", "t"]).unwrap();
        let f = d.set(&["F"]).unwrap();
        let des = |v: Value| v.0 < 2;
        Nmatrix::from_fn("M0", d.clone(), tt, |c, a| {
            Ok(match c {
                Connective::Neg => {
                    if a[0].0 == 0 {
                        f
                    } else {
                        tt
                    }
                }
                Connective::Circ => {
                    if a[0].0 == 1 {
                        f
                    } else {
                        tt
                    }
                }
                Connective::And => if des(a[0]) && des(a[1]) { tt } else { f },
                Connective::Or => if des(a[0]) || des(a[1]) { tt } else { f },
                Connective::Imp => if !des(a[0]) || des(a[1]) { tt } else { f },
            })
        })
        .unwrap()
    }

    fn check(sem: &Semantics, prem: &[&str], goal: &str) -> Verdict {
        let p: Vec<Formula> = prem.iter().map(|s| parse(s).unwrap()).collect();
        check_consequence(sem, &p, &parse(goal).unwrap())
    }

    #[test]
    fn basic_verdicts() {
        let sem = Semantics::nmatrix(m0());
        assert!(check(&sem, &["p", "p -> q"], "q").is_valid());
        assert!(check(&sem, &[], "p | ~p").is_valid());
        assert!(check(&sem, &["o p", "p", "~p"], "q").is_valid());
        assert!(!check(&sem, &["p", "~p"], "q").is_valid());
        assert!(!check(&sem, &[], "o o p").is_valid());
        assert!(check(&sem, &["q"], "q").is_valid());
    }

    #[test]
    fn cc_restriction_changes_verdict() {
        let base = Arc::new(m0());
        let r = RNmatrix::new("R", base, vec![Restriction::Cc(0)]).unwrap();
        let sem = Semantics::rnmatrix(r);
        assert!(check(&sem, &[], "o o p").is_valid());
        assert!(!check(&sem, &[], "o p").is_valid());
    }

    #[test]
    fn countermodel_is_first_in_domain_order() {
        let sem = Semantics::nmatrix(m0());
        match check(&sem, &["p", "~p"], "q") {
            Verdict::Refuted(cm) => {
                let a = &cm.assignment;
                assert_eq!(a.name_of(&parse("p").unwrap()), Some("t"));
                assert_eq!(a.name_of(&parse("q").unwrap()), Some("F"));
                assert!(a.is_legal(&sem).unwrap());
            }
            Verdict::Valid => panic!("expected a countermodel"),
        }
    }

    #[test]
    fn enumeration_counts() {
        let nm = m0();
        let f = parse("o p").unwrap();
        let s = subformula_closure([&f]);
        // T, F give two options each for o p; t gives one
        assert_eq!(enumerate_legal_assignments(&nm, &s, &[]).unwrap().count(), 5);
        let cc = vec![Constraint::Cc {
            lower: parse("p").unwrap(),
            upper: parse("o p").unwrap(),
        }];
        assert_eq!(enumerate_legal_assignments(&nm, &s, &cc).unwrap().count(), 3);
        let empty = enumerate_legal_assignments(&nm, &[], &[]).unwrap().count();
        assert_eq!(empty, 1);
    }
}
