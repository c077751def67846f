use std::collections::HashMap;

use crate::error::Error;
use crate::formula::{subformula_closure, Connective, Formula};

use super::Restriction;

/// Shape of a closure member, with children given as closure indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Atom,
    Unary(Connective, usize),
    Binary(Connective, usize, usize),
}

/// A subformula-closed formula set in post-order, indexed for evaluation.
#[derive(Debug, Clone)]
pub struct ClosureSet {
    formulas: Vec<Formula>,
    nodes: Vec<Node>,
    index: HashMap<Formula, usize>,
    circ_of: Vec<Option<usize>>,
    neg_of: Vec<Option<usize>>,
}

impl ClosureSet {
    /// The subformula closure of `fs`.
    pub fn new<'a, I>(fs: I) -> ClosureSet
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        ClosureSet::from_ordered(subformula_closure(fs))
    }

    /// Accepts `fs` only if it is already closed under subformulas.
    pub fn from_closed(fs: &[Formula]) -> Result<ClosureSet, Error> {
        let cs = ClosureSet::new(fs);
        if cs.len() != fs.len() {
            let missing = cs
                .formulas
                .iter()
                .find(|f| !fs.contains(f))
                .map(|f| f.to_string())
                .unwrap_or_default();
            return Err(Error::NotInDomain(missing));
        }
        Ok(cs)
    }

    fn from_ordered(formulas: Vec<Formula>) -> ClosureSet {
        let index: HashMap<Formula, usize> = formulas
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        let mut circ_of = vec![None; formulas.len()];
        let mut neg_of = vec![None; formulas.len()];
        let nodes = formulas
            .iter()
            .enumerate()
            .map(|(i, f)| match f {
                Formula::Atom(_) => Node::Atom,
                Formula::Neg(a) => {
                    let a = index[&**a];
                    neg_of[a] = Some(i);
                    Node::Unary(Connective::Neg, a)
                }
                Formula::Circ(a) => {
                    let a = index[&**a];
                    circ_of[a] = Some(i);
                    Node::Unary(Connective::Circ, a)
                }
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                    Node::Binary(f.connective().expect("binary"), index[&**l], index[&**r])
                }
            })
            .collect();
        ClosureSet {
            formulas,
            nodes,
            index,
            circ_of,
            neg_of,
        }
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Index of `∘φ` where `φ` is member `i`, if present.
    pub fn circ_of(&self, i: usize) -> Option<usize> {
        self.circ_of[i]
    }

    /// Index of `¬φ` where `φ` is member `i`, if present.
    pub fn neg_of(&self, i: usize) -> Option<usize> {
        self.neg_of[i]
    }

    fn circ_tower_of(&self, mut i: usize, n: usize) -> Option<usize> {
        for _ in 0..n {
            i = self.circ_of[i]?;
        }
        Some(i)
    }

    /// Restriction instances among members, as index pairs. For CC the pair
    /// is (`∘^n γ`, `∘^(n+1) γ`); for IP it is (`∘^j γ`, `∘^j ¬γ`).
    pub(crate) fn indexed_constraints(
        &self,
        restrictions: &[Restriction],
    ) -> Vec<(Restriction, usize, usize)> {
        let mut out = Vec::new();
        for &r in restrictions {
            for i in 0..self.len() {
                match r {
                    Restriction::Cc(n) => {
                        if let Some(lo) = self.circ_tower_of(i, n) {
                            if let Some(hi) = self.circ_of[lo] {
                                out.push((r, lo, hi));
                            }
                        }
                    }
                    Restriction::Ip(j) => {
                        let plain = self.circ_tower_of(i, j);
                        let negated = self.neg_of[i].and_then(|n| self.circ_tower_of(n, j));
                        if let (Some(a), Some(b)) = (plain, negated) {
                            out.push((r, a, b));
                        }
                    }
                }
            }
        }
        out
    }
}

/// One instance of a restriction over a fixed formula set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// If `lower` is classical then `upper` (= `∘lower`) is T.
    Cc { lower: Formula, upper: Formula },
    /// `plain` and `negated` take the same value.
    Ip { plain: Formula, negated: Formula },
}

/// All instances of `restrictions` whose formulas lie in `closure`.
pub fn restriction_closure(
    restrictions: &[Restriction],
    closure: &[Formula],
) -> Result<Vec<Constraint>, Error> {
    for r in restrictions {
        r.validate()?;
    }
    let cs = ClosureSet::from_closed(closure)?;
    Ok(cs
        .indexed_constraints(restrictions)
        .into_iter()
        .map(|(r, a, b)| match r {
            Restriction::Cc(_) => Constraint::Cc {
                lower: cs.formula(a).clone(),
                upper: cs.formula(b).clone(),
            },
            Restriction::Ip(_) => Constraint::Ip {
                plain: cs.formula(a).clone(),
                negated: cs.formula(b).clone(),
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn ip1_closure_has_single_instance() {
        let f = parse("~o ~p <-> ~o p").unwrap();
        let s = subformula_closure([&f]);
        let cs = restriction_closure(&[Restriction::Ip(1)], &s).unwrap();
        assert_eq!(
            cs,
            vec![Constraint::Ip {
                plain: parse("o p").unwrap(),
                negated: parse("o ~p").unwrap()
            }]
        );
    }

    #[test]
    fn cc_instances_follow_towers() {
        let f = parse("o o o p").unwrap();
        let s = subformula_closure([&f]);
        let cc0 = restriction_closure(&[Restriction::Cc(0)], &s).unwrap();
        assert_eq!(cc0.len(), 3);
        let cc1 = restriction_closure(&[Restriction::Cc(1)], &s).unwrap();
        assert_eq!(
            cc1,
            vec![
                Constraint::Cc {
                    lower: parse("o p").unwrap(),
                    upper: parse("o o p").unwrap()
                },
                Constraint::Cc {
                    lower: parse("o o p").unwrap(),
                    upper: parse("o o o p").unwrap()
                },
            ]
        );
    }

    #[test]
    fn unclosed_sets_are_rejected() {
        let s = vec![parse("o p").unwrap()];
        assert!(restriction_closure(&[Restriction::Cc(0)], &s).is_err());
        assert!(restriction_closure(&[Restriction::Ip(0)], &[]).is_err());
    }

    #[test]
    fn post_order_and_parent_maps() {
        let f = parse("~o p & p").unwrap();
        let cs = ClosureSet::new([&f]);
        let names: Vec<String> = cs.formulas().iter().map(|f| f.to_string()).collect();
        assert_eq!(names, ["p", "o p", "~o p", "~o p & p"]);
        assert_eq!(cs.circ_of(0), Some(1));
        assert_eq!(cs.neg_of(1), Some(2));
        assert_eq!(cs.neg_of(0), None);
        assert_eq!(cs.nodes()[3], Node::Binary(Connective::And, 2, 0));
    }
}
