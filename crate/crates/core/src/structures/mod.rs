//! Generators for concrete semantics: swap structures from snapshot
//! predicates and coordinate rules, the LFI3 twist matrix, and Boolean
//! synthesis from truth tables.

mod boolean;
mod lattice;
mod synth;

use crate::error::Error;
use crate::formula::Connective;
use crate::semantics::{Domain, Nmatrix, Snapshot, Value, ValueSet};

pub use boolean::BooleanExpr;
pub use lattice::{check_lattice_agreement, LatticeReport};
pub use synth::{
    minimize, parse_truth_table, synthesize_minterms, twist_from_matrix, verify_expr, TruthTable,
};

/// How satisfying snapshots are named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Naming {
    /// Names listed with their snapshots; the list order is the domain order.
    Explicit(Vec<(Snapshot, String)>),
    /// Each snapshot is named by its bit string, in increasing binary order.
    Bits,
}

/// Describes a snapshot domain: bit tuples of a fixed width satisfying a
/// predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotSpec {
    pub width: usize,
    pub predicate: BooleanExpr,
    pub naming: Naming,
}

impl SnapshotSpec {
    pub fn new(width: usize, predicate: &str, naming: Naming) -> Result<SnapshotSpec, Error> {
        Ok(SnapshotSpec {
            width,
            predicate: BooleanExpr::parse(predicate, width)?,
            naming,
        })
    }
}

const MAX_WIDTH: usize = 8;

fn all_tuples(width: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << width).map(move |n| (0..width).map(|i| n >> (width - 1 - i) & 1 == 1).collect())
}

/// All and only the bit tuples satisfying the predicate, named per the spec.
pub fn generate_snapshot_domain(spec: &SnapshotSpec) -> Result<Domain, Error> {
    if spec.width == 0 || spec.width > MAX_WIDTH {
        return Err(Error::InvalidDomain(format!(
            "snapshot width must be between 1 and {MAX_WIDTH}"
        )));
    }
    if spec.predicate.min_width() > spec.width {
        return Err(Error::InvalidDomain("predicate exceeds the snapshot width".into()));
    }
    let members: Vec<Snapshot> = all_tuples(spec.width)
        .filter(|t| spec.predicate.eval(t))
        .map(Snapshot)
        .collect();
    if members.len() < 2 {
        return Err(Error::InvalidDomain(format!(
            "predicate admits {} snapshot(s); at least 2 are needed",
            members.len()
        )));
    }
    match &spec.naming {
        Naming::Bits => {
            let names: Vec<String> = members
                .iter()
                .map(|s| s.0.iter().map(|&b| if b { '1' } else { '0' }).collect())
                .collect();
            Domain::with_snapshots(&names, members)
        }
        Naming::Explicit(list) => {
            for (s, n) in list {
                if s.width() != spec.width || !members.contains(s) {
                    return Err(Error::InvalidDomain(format!(
                        "`{n}` = {s} does not satisfy the predicate"
                    )));
                }
            }
            if let Some(s) = members.iter().find(|s| !list.iter().any(|(x, _)| x == *s)) {
                return Err(Error::InvalidDomain(format!("snapshot {s} has no name")));
            }
            let names: Vec<&str> = list.iter().map(|(_, n)| n.as_str()).collect();
            Domain::with_snapshots(&names, list.iter().map(|(s, _)| s.clone()).collect())
        }
    }
}

fn slot(c: Connective) -> usize {
    Connective::ALL.iter().position(|&x| x == c).expect("listed")
}

/// Per connective and output coordinate, either a Boolean expression over
/// the input coordinates or nothing (the coordinate is free).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapRules {
    width: usize,
    rules: [Vec<Option<BooleanExpr>>; 5],
}

impl SwapRules {
    pub fn new(width: usize) -> SwapRules {
        SwapRules {
            width,
            rules: std::array::from_fn(|_| vec![None; width]),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Sets output coordinate `coord` (1-based) of `c` from an expression
    /// in `x1..`/`y1..` (or `a1..`/`b1..`).
    pub fn rule(mut self, c: Connective, coord: usize, expr: &str) -> Result<SwapRules, Error> {
        let e = BooleanExpr::parse(expr, self.width)?;
        self.set(c, coord, Some(e))?;
        Ok(self)
    }

    pub fn set(&mut self, c: Connective, coord: usize, e: Option<BooleanExpr>) -> Result<(), Error> {
        if coord == 0 || coord > self.width {
            return Err(Error::InvalidStructure(format!(
                "coordinate {coord} out of range 1..={}",
                self.width
            )));
        }
        if let Some(e) = &e {
            let arity = if c.is_unary() { 1 } else { 2 };
            if e.min_width() > arity * self.width {
                return Err(Error::InvalidStructure(format!(
                    "rule for {c} coordinate {coord} reads a second operand"
                )));
            }
        }
        self.rules[slot(c)][coord - 1] = e;
        Ok(())
    }

    /// The rule for `c` at 1-based `coord`.
    pub fn get(&self, c: Connective, coord: usize) -> Option<&BooleanExpr> {
        self.rules[slot(c)][coord - 1].as_ref()
    }

    fn validate(&self) -> Result<(), Error> {
        for c in Connective::ALL {
            if self.rules[slot(c)].iter().all(|r| r.is_none()) {
                return Err(Error::InvalidStructure(format!(
                    "no coordinate of {c} is constrained"
                )));
            }
        }
        Ok(())
    }
}

/// Builds the Nmatrix whose cells hold every domain value agreeing with the
/// rule outputs on the constrained coordinates.
pub fn build_swap_nmatrix(
    name: &str,
    domain: &Domain,
    rules: &SwapRules,
    designated: &BooleanExpr,
) -> Result<Nmatrix, Error> {
    let width = domain
        .snapshot_width()
        .ok_or_else(|| Error::InvalidStructure("domain has no snapshots".into()))?;
    if width != rules.width {
        return Err(Error::InvalidStructure(format!(
            "rules of width {} for snapshots of width {width}",
            rules.width
        )));
    }
    rules.validate()?;
    let snap = |v: Value| domain.snapshot(v).expect("snapshot domain");
    let des: ValueSet = domain
        .values()
        .filter(|&v| designated.eval(&snap(v).0))
        .collect();
    Nmatrix::from_fn(name, domain.clone(), des, |c, args| {
        let input: Vec<bool> = args.iter().flat_map(|&a| snap(a).0.iter().copied()).collect();
        let want: Vec<Option<bool>> = rules.rules[slot(c)]
            .iter()
            .map(|r| r.as_ref().map(|e| e.eval(&input)))
            .collect();
        Ok(domain
            .values()
            .filter(|&z| {
                want.iter()
                    .enumerate()
                    .all(|(k, w)| w.is_none_or(|b| snap(z).bit(k) == b))
            })
            .collect())
    })
}

fn snap(bits: &[u8]) -> Snapshot {
    Snapshot::from_bits(bits)
}

/// `B_0`: pairs (α, ¬α) with at least one coordinate 1, named T, t, F.
pub fn b0_spec() -> SnapshotSpec {
    SnapshotSpec::new(
        2,
        "x1 | x2",
        Naming::Explicit(vec![
            (snap(&[1, 0]), "T".into()),
            (snap(&[1, 1]), "t".into()),
            (snap(&[0, 1]), "F".into()),
        ]),
    )
    .expect("static spec")
}

/// `B_1^0`: triples (α, ¬α, ¬∘α) named T, t, b, f, F.
pub fn b10_spec() -> SnapshotSpec {
    SnapshotSpec::new(
        3,
        "(x1 | x2) & (x3 | ~(x1 & x2))",
        Naming::Explicit(vec![
            (snap(&[1, 0, 0]), "T".into()),
            (snap(&[1, 0, 1]), "t".into()),
            (snap(&[1, 1, 1]), "b".into()),
            (snap(&[0, 1, 1]), "f".into()),
            (snap(&[0, 1, 0]), "F".into()),
        ]),
    )
    .expect("static spec")
}

fn designated_x1() -> BooleanExpr {
    BooleanExpr::Var(0)
}

fn binary_first_coord(mut r: SwapRules) -> SwapRules {
    r = r.rule(Connective::And, 1, "x1 & y1").expect("static rule");
    r = r.rule(Connective::Or, 1, "x1 | y1").expect("static rule");
    r.rule(Connective::Imp, 1, "~x1 | y1").expect("static rule")
}

fn build(name: &str, spec: SnapshotSpec, rules: SwapRules) -> Nmatrix {
    let d = generate_snapshot_domain(&spec).expect("static domain");
    build_swap_nmatrix(name, &d, &rules, &designated_x1()).expect("static structure")
}

fn b0_rules(neg: &[(usize, &str)], circ: &[(usize, &str)]) -> SwapRules {
    let mut r = binary_first_coord(SwapRules::new(2));
    for &(k, e) in neg {
        r = r.rule(Connective::Neg, k, e).expect("static rule");
    }
    for &(k, e) in circ {
        r = r.rule(Connective::Circ, k, e).expect("static rule");
    }
    r
}

/// The three-valued Nmatrix `M_0` of mbCciw.
pub fn mbcciw_nmatrix() -> Nmatrix {
    build("M0", b0_spec(), b0_rules(&[(1, "x2")], &[(1, "~(x1 & x2)")]))
}

/// `M_0^0`: M_0 with deterministic ∘, for mbCci (`L_0^0`).
pub fn mbcci_nmatrix() -> Nmatrix {
    build(
        "M0^0",
        b0_spec(),
        b0_rules(&[(1, "x2")], &[(1, "~(x1 & x2)"), (2, "x1 & x2")]),
    )
}

/// `M_0^1`: M_0^0 with ¬ swapping coordinates, for Cie (`L_0^1`).
pub fn cie_nmatrix() -> Nmatrix {
    build(
        "M0^1",
        b0_spec(),
        b0_rules(&[(1, "x2"), (2, "x1")], &[(1, "~(x1 & x2)"), (2, "x1 & x2")]),
    )
}

/// `M_1`: M_0 with ¬ swapping coordinates, for Cbr.
pub fn cbr_nmatrix() -> Nmatrix {
    build(
        "M1",
        b0_spec(),
        b0_rules(&[(1, "x2"), (2, "x1")], &[(1, "~(x1 & x2)")]),
    )
}

fn b10_rules(neg: &[(usize, &str)]) -> SwapRules {
    let mut r = binary_first_coord(SwapRules::new(3));
    for &(k, e) in neg {
        r = r.rule(Connective::Neg, k, e).expect("static rule");
    }
    r.rule(Connective::Circ, 1, "~(x1 & x2)")
        .and_then(|r| r.rule(Connective::Circ, 2, "x3"))
        .and_then(|r| r.rule(Connective::Circ, 3, "x3 & ~(x1 & x2)"))
        .expect("static rule")
}

/// The five-valued Nmatrix `M_1^0` over `B_1^0`.
pub fn m10_nmatrix() -> Nmatrix {
    build("M1^0", b10_spec(), b10_rules(&[(1, "x2")]))
}

/// `M_1^1`: ¬ swaps the first two coordinates.
pub fn m11_nmatrix() -> Nmatrix {
    build("M1^1", b10_spec(), b10_rules(&[(1, "x2"), (2, "x1")]))
}

/// `M_1^2`: ¬ is the deterministic swap `(x2, x1, x3)`.
pub fn m12_nmatrix() -> Nmatrix {
    build(
        "M1^2",
        b10_spec(),
        b10_rules(&[(1, "x2"), (2, "x1"), (3, "x3")]),
    )
}

/// Coordinate rules of the LFI3 twist structure.
pub fn lfi3_twist_rules() -> SwapRules {
    let rules: [(Connective, [&str; 3]); 5] = [
        (
            Connective::And,
            ["a1 & b1", "a2 | b2", "(~a2 & b3) | (a3 & ~b2) | (a3 & b3)"],
        ),
        (
            Connective::Or,
            ["a1 | b1", "a2 & b2", "(~a1 & b3) | (a3 & ~b1) | (a3 & b3)"],
        ),
        (
            Connective::Imp,
            [
                "a1 -> b1",
                "b2 & (~a2 | a3)",
                "(~a2 & b3) | (~a2 & a3 & ~b1) | (a3 & b3) | (~a1 & a3 & ~b1)",
            ],
        ),
        (Connective::Neg, ["a2", "a1", "a3"]),
        (Connective::Circ, ["~(a1 & a2)", "a3", "a3 & ~(a1 & a2)"]),
    ];
    let mut r = SwapRules::new(3);
    for (c, es) in rules {
        for (k, e) in es.iter().enumerate() {
            r = r.rule(c, k + 1, e).expect("static rule");
        }
    }
    r
}

/// The five-valued deterministic twist matrix of LFI3.
pub fn build_lfi3_twist() -> Nmatrix {
    let m = build("LFI3", b10_spec(), lfi3_twist_rules());
    debug_assert!(m.is_deterministic());
    m
}

/// The three-valued matrix of LFI1 on `{T, b, F}`, built from its own tables.
pub fn lfi1_matrix() -> Nmatrix {
    let d = Domain::with_snapshots(
        &["T", "b", "F"],
        vec![snap(&[1, 0, 0]), snap(&[1, 1, 1]), snap(&[0, 1, 0])],
    )
    .expect("static domain");
    // order F < b < T as ranks
    let rank = |v: Value| match v.0 {
        0 => 2,
        1 => 1,
        _ => 0,
    };
    let of_rank = |r: u8| Value(2 - r);
    let des = d.set(&["T", "b"]).expect("static names");
    Nmatrix::matrix_from_fn("LFI1", d, des, |c, a| match c {
        Connective::And => of_rank(rank(a[0]).min(rank(a[1]))),
        Connective::Or => of_rank(rank(a[0]).max(rank(a[1]))),
        Connective::Imp => {
            if a[0] == Value(2) {
                Value(0)
            } else {
                a[1]
            }
        }
        Connective::Neg => of_rank(2 - rank(a[0])),
        Connective::Circ => {
            if a[0] == Value(1) {
                Value(2)
            } else {
                Value(0)
            }
        }
    })
    .expect("static matrix")
}

/// The two-valued classical matrix, with ∘ constantly true.
pub fn cpl_matrix() -> Nmatrix {
    let d = Domain::with_snapshots(&["T", "F"], vec![snap(&[1, 0, 0]), snap(&[0, 1, 0])])
        .expect("static domain");
    let des = d.set(&["T"]).expect("static names");
    let b = |v: Value| v.0 == 0;
    let v = |x: bool| Value(if x { 0 } else { 1 });
    Nmatrix::matrix_from_fn("CPL", d, des, |c, a| match c {
        Connective::And => v(b(a[0]) && b(a[1])),
        Connective::Or => v(b(a[0]) || b(a[1])),
        Connective::Imp => v(!b(a[0]) || b(a[1])),
        Connective::Neg => v(!b(a[0])),
        Connective::Circ => v(true),
    })
    .expect("static matrix")
}
