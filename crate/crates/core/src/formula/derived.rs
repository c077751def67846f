use crate::error::Error;

use super::{circ_tower, Formula};

/// Defined connectives, expanded into primitive syntax on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Derived {
    /// `¬a ∧ ∘a`
    StrongNeg,
    /// `(a → b) ∧ (b → a)`
    Iff,
    /// `(a ↔ b) ∧ (¬a ↔ ¬b) ∧ (¬∘a ↔ ¬∘b)`
    Equiv3,
    /// `¬∘a`
    Bullet,
    /// `(a ∧ ∘a ∧ ∘∘a) ∨ (¬a ∧ ∘a ∧ ∘∘a)`
    CircStar,
    /// `∘*a ∨ (•a ∧ ∘∘a)`
    CircHash,
    /// `∘∘∘a`
    Top,
    /// `¬∘∘∘a`
    Bot,
}

impl Derived {
    pub const ALL: [Derived; 8] = [
        Derived::StrongNeg,
        Derived::Iff,
        Derived::Equiv3,
        Derived::Bullet,
        Derived::CircStar,
        Derived::CircHash,
        Derived::Top,
        Derived::Bot,
    ];

    pub fn arity(self) -> usize {
        match self {
            Derived::Iff | Derived::Equiv3 => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Derived::StrongNeg => "strong_neg",
            Derived::Iff => "iff",
            Derived::Equiv3 => "equiv3",
            Derived::Bullet => "bullet",
            Derived::CircStar => "circ_star",
            Derived::CircHash => "circ_hash",
            Derived::Top => "top",
            Derived::Bot => "bot",
        }
    }

    pub fn from_name(name: &str) -> Option<Derived> {
        Derived::ALL.into_iter().find(|d| d.name() == name)
    }
}

fn iff(a: &Formula, b: &Formula) -> Formula {
    Formula::and(
        Formula::imp(a.clone(), b.clone()),
        Formula::imp(b.clone(), a.clone()),
    )
}

fn bullet(a: &Formula) -> Formula {
    Formula::neg(Formula::circ(a.clone()))
}

fn circ_star(a: &Formula) -> Formula {
    let c1 = circ_tower(a, 1);
    let c2 = circ_tower(a, 2);
    Formula::or(
        Formula::and(Formula::and(a.clone(), c1.clone()), c2.clone()),
        Formula::and(Formula::and(Formula::neg(a.clone()), c1), c2),
    )
}

/// Expands a defined connective applied to `args`.
pub fn build_derived(kind: Derived, args: &[Formula]) -> Result<Formula, Error> {
    if args.len() != kind.arity() {
        return Err(Error::Arity {
            what: kind.name().into(),
            expected: kind.arity(),
            got: args.len(),
        });
    }
    let a = &args[0];
    Ok(match kind {
        Derived::StrongNeg => Formula::and(Formula::neg(a.clone()), Formula::circ(a.clone())),
        Derived::Iff => iff(a, &args[1]),
        Derived::Equiv3 => {
            let b = &args[1];
            Formula::and(
                Formula::and(iff(a, b), iff(&Formula::neg(a.clone()), &Formula::neg(b.clone()))),
                iff(&bullet(a), &bullet(b)),
            )
        }
        Derived::Bullet => bullet(a),
        Derived::CircStar => circ_star(a),
        Derived::CircHash => Formula::or(
            circ_star(a),
            Formula::and(bullet(a), circ_tower(a, 2)),
        ),
        Derived::Top => circ_tower(a, 3),
        Derived::Bot => Formula::neg(circ_tower(a, 3)),
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn expansions() {
        assert_eq!(
            build_derived(Derived::StrongNeg, &[p()]).unwrap(),
            parse("~p & o p").unwrap()
        );
        assert_eq!(build_derived(Derived::Bullet, &[p()]).unwrap(), parse("~o p").unwrap());
        assert_eq!(build_derived(Derived::Top, &[p()]).unwrap(), parse("o o o p").unwrap());
        assert_eq!(build_derived(Derived::Bot, &[p()]).unwrap(), parse("~o o o p").unwrap());
        assert_eq!(
            build_derived(Derived::CircStar, &[p()]).unwrap(),
            parse("p & o p & o o p | ~p & o p & o o p").unwrap()
        );
        assert_eq!(
            build_derived(Derived::CircHash, &[p()]).unwrap(),
            parse("(p & o p & o o p | ~p & o p & o o p) | ~o p & o o p").unwrap()
        );
        let q = Formula::atom("q");
        assert_eq!(
            build_derived(Derived::Equiv3, &[p(), q]).unwrap(),
            parse("(p <-> q) & (~p <-> ~q) & (~o p <-> ~o q)").unwrap()
        );
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            build_derived(Derived::Iff, &[p()]),
            Err(Error::Arity { expected: 2, got: 1, .. })
        ));
        assert!(build_derived(Derived::Top, &[p(), p()]).is_err());
    }
}
