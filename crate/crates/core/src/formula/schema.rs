use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;

use super::{parse, Formula};

/// Maps metavariable names to the formulas that replace them.
pub type Substitution = BTreeMap<String, Formula>;

/// A formula whose atoms are read as metavariables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schema {
    body: Formula,
    metavars: Vec<Arc<str>>,
}

impl Schema {
    pub fn new(body: Formula) -> Schema {
        let metavars = body.atoms().into_iter().collect();
        Schema { body, metavars }
    }

    pub fn parse(text: &str) -> Result<Schema, Error> {
        Ok(Schema::new(parse(text)?))
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    /// Metavariable names in sorted order.
    pub fn metavars(&self) -> &[Arc<str>] {
        &self.metavars
    }

    pub fn instantiate(&self, subst: &Substitution) -> Result<Formula, Error> {
        instantiate(self, subst)
    }

    /// Instantiates with positional arguments matched to [`Schema::metavars`].
    pub fn apply(&self, args: &[Formula]) -> Result<Formula, Error> {
        if args.len() != self.metavars.len() {
            return Err(Error::Arity {
                what: "schema".into(),
                expected: self.metavars.len(),
                got: args.len(),
            });
        }
        let subst = self
            .metavars
            .iter()
            .zip(args)
            .map(|(m, f)| (m.to_string(), f.clone()))
            .collect();
        instantiate(self, &subst)
    }
}

/// Replaces every metavariable occurrence in `schema` by its image under
/// `subst`.
pub fn instantiate(schema: &Schema, subst: &Substitution) -> Result<Formula, Error> {
    for m in &schema.metavars {
        if !subst.contains_key(&**m) {
            return Err(Error::MissingBinding(m.to_string()));
        }
    }
    Ok(replace(&schema.body, subst))
}

fn replace(f: &Formula, subst: &Substitution) -> Formula {
    match f {
        Formula::Atom(n) => subst[&**n].clone(),
        Formula::Neg(a) => Formula::neg(replace(a, subst)),
        Formula::Circ(a) => Formula::circ(replace(a, subst)),
        Formula::And(l, r) => Formula::and(replace(l, subst), replace(r, subst)),
        Formula::Or(l, r) => Formula::or(replace(l, subst), replace(r, subst)),
        Formula::Imp(l, r) => Formula::imp(replace(l, subst), replace(r, subst)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subst(pairs: &[(&str, &str)]) -> Substitution {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse(v).unwrap()))
            .collect()
    }

    #[test]
    fn bc1_and_ciw_instances() {
        let bc1 = Schema::parse("o A -> A -> ~A -> B").unwrap();
        let got = bc1.instantiate(&subst(&[("A", "p"), ("B", "q")])).unwrap();
        assert_eq!(got, parse("o p -> (p -> (~p -> q))").unwrap());

        let ciw = Schema::parse("o A | A & ~A").unwrap();
        let got = ciw.instantiate(&subst(&[("A", "o p")])).unwrap();
        assert_eq!(got, parse("o o p | (o p & ~o p)").unwrap());

        let id = Schema::parse("A").unwrap();
        assert_eq!(id.instantiate(&subst(&[("A", "p")])).unwrap(), parse("p").unwrap());
    }

    #[test]
    fn missing_binding_is_an_error() {
        let bc1 = Schema::parse("o A -> A -> ~A -> B").unwrap();
        let err = bc1.instantiate(&subst(&[("A", "p")])).unwrap_err();
        assert!(matches!(err, Error::MissingBinding(ref m) if m == "B"));
        assert!(bc1.apply(&[parse("p").unwrap()]).is_err());
    }
}
