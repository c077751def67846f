use crate::error::Error;
use crate::formula::Connective;
use crate::semantics::{Nmatrix, Value};

/// Mismatches between a matrix and the lattice reading of a chain order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl LatticeReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `m` with the chain `order` (listed bottom first): ∧ is the
/// infimum, ∨ the supremum, ¬ an antitone involution, `a → b` equals
/// `∼a ∨ b` with `∼a = ¬a ∧ ∘a`, and both De Morgan laws hold.
pub fn check_lattice_agreement(m: &Nmatrix, order: &[&str]) -> Result<LatticeReport, Error> {
    let d = m.domain();
    let chain: Vec<Value> = order
        .iter()
        .map(|n| d.value_or_err(n))
        .collect::<Result<_, _>>()?;
    if chain.len() != d.len() || d.values().any(|v| !chain.contains(&v)) {
        return Err(Error::InvalidStructure(
            "order must list every value exactly once".into(),
        ));
    }
    let rank = |v: Value| chain.iter().position(|&x| x == v).expect("listed");
    let op1 = |c: Connective, a: Value| -> Result<Value, Error> {
        m.unary(c, a).single().ok_or_else(|| Error::NonDeterministic {
            connective: c.name().into(),
            inputs: d.name(a).into(),
        })
    };
    let op2 = |c: Connective, a: Value, b: Value| -> Result<Value, Error> {
        m.binary(c, a, b).single().ok_or_else(|| Error::NonDeterministic {
            connective: c.name().into(),
            inputs: format!("{}, {}", d.name(a), d.name(b)),
        })
    };
    let mut r = LatticeReport::default();
    let mut expect = |ok: bool, what: String| {
        r.checks += 1;
        if !ok {
            r.failures.push(what);
        }
    };
    let n = |v: Value| d.name(v);
    for a in d.values() {
        let na = op1(Connective::Neg, a)?;
        expect(op1(Connective::Neg, na)? == a, format!("~~{} != {}", n(a), n(a)));
        for b in d.values() {
            let (ra, rb) = (rank(a), rank(b));
            let inf = if ra <= rb { a } else { b };
            let sup = if ra <= rb { b } else { a };
            let and = op2(Connective::And, a, b)?;
            let or = op2(Connective::Or, a, b)?;
            expect(and == inf, format!("{} & {} = {}, infimum is {}", n(a), n(b), n(and), n(inf)));
            expect(or == sup, format!("{} | {} = {}, supremum is {}", n(a), n(b), n(or), n(sup)));
            let nb = op1(Connective::Neg, b)?;
            if ra <= rb {
                expect(
                    rank(nb) <= rank(na),
                    format!("{} <= {} but ~{} is not below ~{}", n(a), n(b), n(b), n(a)),
                );
            }
            let strong = op2(Connective::And, na, op1(Connective::Circ, a)?)?;
            let imp = op2(Connective::Imp, a, b)?;
            let via = op2(Connective::Or, strong, b)?;
            expect(imp == via, format!("{} -> {} = {}, strong-negation form gives {}", n(a), n(b), n(imp), n(via)));
            let dm1 = op1(Connective::Neg, and)?;
            let dm1r = op2(Connective::Or, na, nb)?;
            expect(dm1 == dm1r, format!("De Morgan fails for ~({} & {})", n(a), n(b)));
            let dm2 = op1(Connective::Neg, or)?;
            let dm2r = op2(Connective::And, na, nb)?;
            expect(dm2 == dm2r, format!("De Morgan fails for ~({} | {})", n(a), n(b)));
        }
    }
    Ok(r)
}
