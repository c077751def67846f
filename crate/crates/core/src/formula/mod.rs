//! Formulas over the signature `{¬, ∘, ∧, ∨, →}`.
//!
//! Concrete syntax is ASCII: `~` for negation, the reserved word `o` for the
//! consistency operator, `&`, `|`, `->`, and parentheses. `<->` is accepted as
//! sugar and expands to a conjunction of two implications.

mod derived;
mod parser;
mod render;
mod schema;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub use derived::{build_derived, Derived};
pub use parser::{parse, ParseError};
pub use render::{render, render_pretty};
pub use schema::{instantiate, Schema, Substitution};

/// The primitive connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Neg,
    Circ,
    And,
    Or,
    Imp,
}

impl Connective {
    pub const ALL: [Connective; 5] = [
        Connective::Neg,
        Connective::Circ,
        Connective::And,
        Connective::Or,
        Connective::Imp,
    ];
    pub const UNARY: [Connective; 2] = [Connective::Neg, Connective::Circ];
    pub const BINARY: [Connective; 3] = [Connective::And, Connective::Or, Connective::Imp];

    pub fn is_unary(self) -> bool {
        matches!(self, Connective::Neg | Connective::Circ)
    }

    /// Short lowercase name used on the command line and in JSON.
    pub fn name(self) -> &'static str {
        match self {
            Connective::Neg => "neg",
            Connective::Circ => "circ",
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Imp => "imp",
        }
    }

    pub fn from_name(name: &str) -> Option<Connective> {
        Connective::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Neg => "~",
            Connective::Circ => "o",
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Imp => "->",
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A propositional formula. Children are reference counted so clones are
/// cheap; equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>),
    Neg(Arc<Formula>),
    Circ(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    /// Builds an atom. Panics on an empty name or the reserved name `o`; use
    /// [`parse`] for untrusted input.
    pub fn atom(name: &str) -> Formula {
        assert!(
            parser::is_valid_atom_name(name),
            "invalid atom name {name:?}"
        );
        Formula::Atom(Arc::from(name))
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Arc::new(f))
    }

    pub fn circ(f: Formula) -> Formula {
        Formula::Circ(Arc::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Arc::new(l), Arc::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Arc::new(l), Arc::new(r))
    }

    pub fn unary(c: Connective, f: Formula) -> Formula {
        match c {
            Connective::Neg => Formula::neg(f),
            Connective::Circ => Formula::circ(f),
            _ => panic!("{c} is not unary"),
        }
    }

    pub fn binary(c: Connective, l: Formula, r: Formula) -> Formula {
        match c {
            Connective::And => Formula::and(l, r),
            Connective::Or => Formula::or(l, r),
            Connective::Imp => Formula::imp(l, r),
            _ => panic!("{c} is not binary"),
        }
    }

    /// Main connective, or `None` for atoms.
    pub fn connective(&self) -> Option<Connective> {
        match self {
            Formula::Atom(_) => None,
            Formula::Neg(_) => Some(Connective::Neg),
            Formula::Circ(_) => Some(Connective::Circ),
            Formula::And(..) => Some(Connective::And),
            Formula::Or(..) => Some(Connective::Or),
            Formula::Imp(..) => Some(Connective::Imp),
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Neg(a) | Formula::Circ(a) => vec![a],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => vec![l, r],
        }
    }

    pub fn atom_name(&self) -> Option<&str> {
        match self {
            Formula::Atom(n) => Some(n),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Neg(a) | Formula::Circ(a) => 1 + a.depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Atom names occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(n) => {
                out.insert(n.clone());
            }
            _ => {
                for c in self.children() {
                    c.collect_atoms(out);
                }
            }
        }
    }

    /// `∘^n self`.
    pub fn circ_tower(&self, n: usize) -> Formula {
        circ_tower(self, n)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Returns `∘^n f`.
pub fn circ_tower(f: &Formula, n: usize) -> Formula {
    (0..n).fold(f.clone(), |acc, _| Formula::circ(acc))
}

/// Smallest subformula-closed set containing `fs`, ordered so that every
/// formula comes after all of its subformulas (post-order, first occurrence).
pub fn subformula_closure<'a, I>(fs: I) -> Vec<Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for f in fs {
        push_closure(f, &mut seen, &mut out);
    }
    out
}

fn push_closure(f: &Formula, seen: &mut HashMap<Formula, usize>, out: &mut Vec<Formula>) {
    if seen.contains_key(f) {
        return;
    }
    for c in f.children() {
        push_closure(c, seen, out);
    }
    seen.insert(f.clone(), out.len());
    out.push(f.clone());
}

/// All formulas over `atoms` of depth at most `depth`, grouped by increasing
/// depth and otherwise in a fixed deterministic order. The count grows
/// doubly exponentially; depth 3 over one atom is already 44 166 formulas.
pub fn enumerate_formulas(atoms: &[&str], depth: usize) -> Vec<Formula> {
    let mut all: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a)).collect();
    let mut prev_len = 0;
    for _ in 0..depth {
        // formulas of depth exactly d+1 need at least one child of depth d
        let older = prev_len;
        let cur_len = all.len();
        let mut next = Vec::new();
        for f in &all[older..cur_len] {
            next.push(Formula::neg(f.clone()));
            next.push(Formula::circ(f.clone()));
        }
        for c in Connective::BINARY {
            for (i, l) in all[..cur_len].iter().enumerate() {
                for (j, r) in all[..cur_len].iter().enumerate() {
                    if i >= older || j >= older {
                        next.push(Formula::binary(c, l.clone(), r.clone()));
                    }
                }
            }
        }
        prev_len = cur_len;
        all.extend(next);
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn closure_examples() {
        let cc = circ_tower(&p(), 2);
        assert_eq!(subformula_closure([&cc]), vec![p(), Formula::circ(p()), cc.clone()]);

        let imp = Formula::imp(p(), q());
        assert_eq!(subformula_closure([&imp, &q()]), vec![p(), q(), imp.clone()]);

        let f = parse("~o~p").unwrap();
        let got: Vec<String> = subformula_closure([&f]).iter().map(render).collect();
        assert_eq!(got, ["p", "~p", "o ~p", "~o ~p"]);
    }

    #[test]
    fn tower_examples() {
        assert_eq!(circ_tower(&p(), 0), p());
        assert_eq!(circ_tower(&p(), 2), Formula::circ(Formula::circ(p())));
        assert_eq!(render(&circ_tower(&Formula::neg(p()), 3)), "o o o ~p");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_formulas(&["p"], 0).len(), 1);
        assert_eq!(enumerate_formulas(&["p"], 1).len(), 6);
        assert_eq!(enumerate_formulas(&["p"], 2).len(), 121);
        assert_eq!(enumerate_formulas(&["p", "q"], 2).len(), 1010);
        let d3 = enumerate_formulas(&["p"], 3);
        assert_eq!(d3.len(), 44166);
        let distinct: std::collections::HashSet<_> = d3.iter().collect();
        assert_eq!(distinct.len(), d3.len());
        assert!(d3.iter().all(|f| f.depth() <= 3));
    }

    #[test]
    fn atoms_and_depth() {
        let f = parse("o (p & ~q) -> p").unwrap();
        assert_eq!(f.depth(), 4);
        let names: Vec<_> = f.atoms().into_iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["p", "q"]);
    }
}
