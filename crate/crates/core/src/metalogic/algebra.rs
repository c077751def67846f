use std::collections::{BTreeSet, HashMap};

use serde_json::json;

use crate::error::Error;
use crate::formula::{build_derived, render, Connective, Derived, Formula, Schema};
use crate::semantics::{check_consequence, eval_matrix, Nmatrix, Semantics, SemanticsKind, Value, ValueSet};
use crate::structures::build_lfi3_twist;

use super::{Witness, WitnessReport};

fn names(m: &Nmatrix, s: ValueSet) -> String {
    m.domain().format_set(s)
}

fn op1(m: &Nmatrix, c: Connective, a: Value) -> Result<Value, Error> {
    m.unary(c, a).single().ok_or_else(|| Error::NonDeterministic {
        connective: c.name().into(),
        inputs: m.domain().name(a).into(),
    })
}

fn op2(m: &Nmatrix, c: Connective, a: Value, b: Value) -> Result<Value, Error> {
    m.binary(c, a, b).single().ok_or_else(|| Error::NonDeterministic {
        connective: c.name().into(),
        inputs: format!("{}, {}", m.domain().name(a), m.domain().name(b)),
    })
}

/// Checks that `members` is closed under every operation of `m`.
pub fn check_subalgebra(m: &Nmatrix, members: &[&str]) -> Result<WitnessReport, Error> {
    let d = m.domain();
    let set = d.set(members)?;
    let mut r = WitnessReport::new(format!("subalgebra:{}{}", m.name(), d.format_set(set)));
    for c in Connective::ALL {
        let arity = if c.is_unary() { 1 } else { 2 };
        let tuples: Vec<Vec<Value>> = if arity == 1 {
            set.iter().map(|a| vec![a]).collect()
        } else {
            set.iter().flat_map(|a| set.iter().map(move |b| vec![a, b])).collect()
        };
        for args in tuples {
            r.checked += 1;
            let out = m.cell(c, &args);
            if !out.is_subset(set) {
                let shown: Vec<&str> = args.iter().map(|v| d.name(*v)).collect();
                r.fail(
                    format!(
                        "{}({}) = {} leaves {}",
                        c.name(),
                        shown.join(", "),
                        names(m, out),
                        d.format_set(set)
                    ),
                    Some(json!({
                        "connective": c.name(),
                        "args": shown,
                        "result": names(m, out),
                    })),
                );
            }
        }
    }
    Ok(r)
}

/// Checks that the matrix of `sup` sits inside the matrix of `sub` as a
/// submatrix: its values (matched by name) form a subalgebra, the tables
/// agree there, and its designated set is the trace of the larger one.
/// When this holds, `sub` is a sublogic of `sup`.
pub fn check_sublogic_inclusion(sub: &Nmatrix, sup: &Nmatrix) -> Result<WitnessReport, Error> {
    if !sub.is_deterministic() || !sup.is_deterministic() {
        return Err(Error::InvalidStructure(
            "sublogic inclusion needs two deterministic matrices".into(),
        ));
    }
    let (bd, sd) = (sub.domain(), sup.domain());
    let embed: Vec<Value> = sd
        .names()
        .iter()
        .map(|n| {
            bd.value(n).ok_or_else(|| {
                Error::InvalidStructure(format!(
                    "{} has no value named `{n}`, so the signatures do not match",
                    sub.name()
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let member_names: Vec<&str> = sd.names().iter().map(String::as_str).collect();
    let mut r = check_subalgebra(sub, &member_names)?;
    r.claim = format!("sublogic:{}<={}", sub.name(), sup.name());
    let at = |v: Value| embed[v.index()];
    for c in Connective::ALL {
        for a in sd.values() {
            if c.is_unary() {
                r.checked += 1;
                let (x, y) = (op1(sup, c, a)?, op1(sub, c, at(a))?);
                if at(x) != y {
                    r.fail(
                        format!("{}({}) is {} in {} but {} in {}", c.name(), sd.name(a), sd.name(x), sup.name(), bd.name(y), sub.name()),
                        None,
                    );
                }
                continue;
            }
            for b in sd.values() {
                r.checked += 1;
                let (x, y) = (op2(sup, c, a, b)?, op2(sub, c, at(a), at(b))?);
                if at(x) != y {
                    r.fail(
                        format!(
                            "{}({}, {}) is {} in {} but {} in {}",
                            c.name(),
                            sd.name(a),
                            sd.name(b),
                            sd.name(x),
                            sup.name(),
                            bd.name(y),
                            sub.name()
                        ),
                        None,
                    );
                }
            }
        }
    }
    for v in sd.values() {
        r.checked += 1;
        if sup.is_designated(v) != sub.is_designated(at(v)) {
            r.fail(format!("designation of {} differs", sd.name(v)), None);
        }
    }
    Ok(r)
}

/// `gate` with its only atom replaced by `x`.
pub fn gate_instance(gate: &Formula, x: &Formula) -> Result<Formula, Error> {
    let schema = Schema::new(gate.clone());
    if schema.metavars().len() != 1 {
        return Err(Error::Arity {
            what: "gate formula".into(),
            expected: 1,
            got: schema.metavars().len(),
        });
    }
    schema.apply(std::slice::from_ref(x))
}

fn unary_value(m: &Nmatrix, f: &Formula, v: Value) -> Result<Value, Error> {
    eval_matrix(m, |_| Some(v), f)
}

/// Checks that `gate` is designated exactly at the values named in `allowed`.
pub fn check_gate(m: &Nmatrix, allowed: &[&str], gate: &Formula) -> Result<WitnessReport, Error> {
    gate_instance(gate, &Formula::atom("p"))?;
    let set = m.domain().set(allowed)?;
    let atom = gate.atoms().into_iter().next().expect("one atom");
    let mut r = WitnessReport::new(format!("gate:{}:{}", m.name(), render(gate)));
    for v in m.domain().values() {
        r.checked += 1;
        let out = unary_value(m, gate, v)?;
        let (vn, on) = (m.domain().name(v), m.domain().name(out));
        r.witnesses.push(Witness::new(vn).formula(gate).assign(&atom, vn).value(on));
        if m.is_designated(out) != set.contains(v) {
            r.fail(
                format!(
                    "gate gives {on} at {vn}, which is {}designated, but {vn} is {}in {}",
                    if m.is_designated(out) { "" } else { "not " },
                    if set.contains(v) { "" } else { "not " },
                    m.domain().format_set(set)
                ),
                Some(json!({ "value": vn, "gate_value": on })),
            );
        }
    }
    Ok(r)
}

fn matrix_of(s: &Semantics) -> Result<&Nmatrix, Error> {
    if s.kind() != SemanticsKind::Matrix {
        return Err(Error::InvalidStructure(format!(
            "{} is not a deterministic matrix",
            s.name()
        )));
    }
    Ok(s.nmatrix_ref())
}

/// Gate property of `gate` on `big` for the values of `small`, then the
/// recovery equivalence for one sequent: the gated sequent in `big` holds
/// iff the plain sequent holds in `small`.
pub fn check_recovery(
    big: &Semantics,
    small: &Semantics,
    gate: &Formula,
    premises: &[Formula],
    goal: &Formula,
) -> Result<WitnessReport, Error> {
    let (bm, sm) = (matrix_of(big)?, matrix_of(small)?);
    let allowed: Vec<&str> = sm.domain().names().iter().map(String::as_str).collect();
    let mut r = check_gate(bm, &allowed, gate)?;
    r.claim = format!("recovery:{}/{}:{}", bm.name(), sm.name(), render(gate));
    let mut vars = BTreeSet::new();
    for f in premises.iter().chain([goal]) {
        vars.extend(f.atoms());
    }
    let mut gated = Vec::new();
    for v in &vars {
        gated.push(gate_instance(gate, &Formula::atom(v))?);
    }
    gated.extend(premises.iter().cloned());
    let vb = check_consequence(big, &gated, goal);
    let vs = check_consequence(small, premises, goal);
    r.checked += 1;
    let shown = |ps: &[Formula]| {
        let p: Vec<String> = ps.iter().map(render).collect();
        format!("{} |= {}", p.join("; "), render(goal))
    };
    r.witnesses.push(Witness::new(format!("gated {}", bm.name())).text(shown(&gated)).evidence(vb.to_json()));
    r.witnesses.push(Witness::new(sm.name()).text(shown(premises)).evidence(vs.to_json()));
    if vb.is_valid() != vs.is_valid() {
        r.fail(
            format!("verdicts differ on {}", shown(premises)),
            Some(json!({ "big": vb.to_json(), "small": vs.to_json() })),
        );
    }
    Ok(r)
}

/// Everything about a formula that recovery verdicts depend on: its value at
/// every row of both matrices and which atoms it mentions.
#[derive(Clone, PartialEq, Eq, Hash)]
struct ClassKey {
    big: Vec<u8>,
    small: Vec<u8>,
    vars: u8,
}

struct Tables {
    n: usize,
    un: [Vec<u8>; 2],
    bin: [Vec<u8>; 3],
}

impl Tables {
    fn new(m: &Nmatrix) -> Result<Tables, Error> {
        let n = m.domain().len();
        let un = [Connective::Neg, Connective::Circ]
            .map(|c| (0..n).map(|a| op1(m, c, Value(a as u8)).map(|v| v.0)).collect::<Result<Vec<_>, _>>());
        let bin = [Connective::And, Connective::Or, Connective::Imp].map(|c| {
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(op2(m, c, Value(a as u8), Value(b as u8))?.0);
                }
            }
            Ok::<_, Error>(t)
        });
        let [u0, u1] = un;
        let [b0, b1, b2] = bin;
        Ok(Tables { n, un: [u0?, u1?], bin: [b0?, b1?, b2?] })
    }

    fn rows(&self, atoms: usize) -> Vec<Vec<u8>> {
        let count = self.n.pow(atoms as u32);
        (0..count)
            .map(|mut r| {
                let mut digits = vec![0u8; atoms];
                for d in digits.iter_mut() {
                    *d = (r % self.n) as u8;
                    r /= self.n;
                }
                digits
            })
            .collect()
    }

    fn designated_mask(&self, m: &Nmatrix, vec: &[u8]) -> u128 {
        vec.iter()
            .enumerate()
            .filter(|(_, &v)| m.is_designated(Value(v)))
            .fold(0, |acc, (i, _)| acc | 1u128 << i)
    }
}

struct Class {
    key: ClassKey,
    rep: Formula,
    count: u64,
}

/// Truth-function classes of all formulas over `atoms` up to `depth`,
/// with the number of formulas in each.
fn classes(
    bt: &Tables,
    st: &Tables,
    atoms: &[&str],
    depth: usize,
) -> Vec<Class> {
    let (brows, srows) = (bt.rows(atoms.len()), st.rows(atoms.len()));
    let mut level: Vec<Class> = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| Class {
            key: ClassKey {
                big: brows.iter().map(|r| r[i]).collect(),
                small: srows.iter().map(|r| r[i]).collect(),
                vars: 1 << i,
            },
            rep: Formula::atom(a),
            count: 1,
        })
        .collect();
    let atom_level = level.len();
    for _ in 0..depth {
        let mut index: HashMap<ClassKey, usize> = HashMap::new();
        let mut next: Vec<Class> = Vec::new();
        let mut add = |key: ClassKey, rep: &dyn Fn() -> Formula, count: u64, next: &mut Vec<Class>| {
            match index.get(&key) {
                Some(&i) => next[i].count += count,
                None => {
                    index.insert(key.clone(), next.len());
                    next.push(Class { key, rep: rep(), count });
                }
            }
        };
        for c in &level[..atom_level] {
            add(c.key.clone(), &|| c.rep.clone(), 1, &mut next);
        }
        for (u, conn) in [Connective::Neg, Connective::Circ].into_iter().enumerate() {
            for c in &level {
                let key = ClassKey {
                    big: c.key.big.iter().map(|&v| bt.un[u][v as usize]).collect(),
                    small: c.key.small.iter().map(|&v| st.un[u][v as usize]).collect(),
                    vars: c.key.vars,
                };
                add(key, &|| Formula::unary(conn, c.rep.clone()), c.count, &mut next);
            }
        }
        for (b, conn) in Connective::BINARY.into_iter().enumerate() {
            for l in &level {
                for r in &level {
                    let key = ClassKey {
                        big: l.key.big.iter().zip(&r.key.big).map(|(&x, &y)| bt.bin[b][x as usize * bt.n + y as usize]).collect(),
                        small: l.key.small.iter().zip(&r.key.small).map(|(&x, &y)| st.bin[b][x as usize * st.n + y as usize]).collect(),
                        vars: l.key.vars | r.key.vars,
                    };
                    add(key, &|| Formula::binary(conn, l.rep.clone(), r.rep.clone()), l.count * r.count, &mut next);
                }
            }
        }
        // keep the atoms first so they stay at the front of the next level
        level = next;
    }
    level
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Profile {
    big: u128,
    small: u128,
    vars: u8,
}

/// The recovery equivalence over every sequent with at most `max_premises`
/// premises drawn, like the goal, from the formulas over `atoms` of depth at
/// most `depth`. Formulas are grouped by truth function on both matrices
/// together with their atom set, which determines both verdicts exactly.
pub fn recovery_sweep(
    big: &Nmatrix,
    small: &Nmatrix,
    gate: &Formula,
    atoms: &[&str],
    depth: usize,
    max_premises: usize,
) -> Result<WitnessReport, Error> {
    let allowed: Vec<&str> = small.domain().names().iter().map(String::as_str).collect();
    let mut r = check_gate(big, &allowed, gate)?;
    r.claim = format!("recovery-sweep:{}/{}:{}", big.name(), small.name(), render(gate));
    r = r
        .bound("atoms", atoms.len() as u64)
        .bound("depth", depth as u64)
        .bound("premises", max_premises as u64);
    if r.is_refuted() {
        return Ok(r);
    }
    let (bt, st) = (Tables::new(big)?, Tables::new(small)?);
    let (nb, ns) = (bt.n.pow(atoms.len() as u32), st.n.pow(atoms.len() as u32));
    if atoms.is_empty() || nb > 128 {
        return Err(Error::InvalidStructure(format!(
            "recovery sweep needs 1 to {} atoms",
            (128f64.ln() / (bt.n as f64).ln()).floor()
        )));
    }
    let full = |n: usize| if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let (all_b, all_s) = (full(nb), full(ns));
    let in_small: Vec<bool> = big
        .domain()
        .names()
        .iter()
        .map(|n| small.domain().value(n).is_some())
        .collect();
    let brows = bt.rows(atoms.len());
    let gate_mask: Vec<u128> = (0..1u32 << atoms.len())
        .map(|vars| {
            brows.iter().enumerate().fold(0u128, |acc, (i, row)| {
                let ok = (0..atoms.len()).all(|a| vars & (1 << a) == 0 || in_small[row[a] as usize]);
                if ok {
                    acc | 1u128 << i
                } else {
                    acc
                }
            })
        })
        .collect();
    let cls = classes(&bt, &st, atoms, depth);
    let formulas: u64 = cls.iter().map(|c| c.count).sum();
    let mut profiles: Vec<(Profile, usize)> = Vec::new();
    let mut seen: HashMap<Profile, ()> = HashMap::new();
    for (i, c) in cls.iter().enumerate() {
        let p = Profile {
            big: bt.designated_mask(big, &c.key.big),
            small: st.designated_mask(small, &c.key.small),
            vars: c.key.vars,
        };
        if seen.insert(p, ()).is_none() {
            profiles.push((p, i));
        }
    }
    // premise sets: meet of designation masks, union of atom sets
    let mut combos: HashMap<Profile, Vec<usize>> = HashMap::new();
    let empty = Profile { big: all_b, small: all_s, vars: 0 };
    combos.insert(empty, vec![]);
    let mut frontier = vec![empty];
    for _ in 0..max_premises {
        let mut grown = Vec::new();
        for base in &frontier {
            let reps = combos[base].clone();
            for (p, ci) in &profiles {
                let q = Profile { big: base.big & p.big, small: base.small & p.small, vars: base.vars | p.vars };
                if let std::collections::hash_map::Entry::Vacant(e) = combos.entry(q) {
                    let mut v = reps.clone();
                    v.push(*ci);
                    e.insert(v);
                    grown.push(q);
                }
            }
        }
        frontier = grown;
    }
    let mut combo_list: Vec<(&Profile, &Vec<usize>)> = combos.iter().collect();
    combo_list.sort_by_key(|(_, reps)| (reps.len(), (*reps).clone()));
    let mut agree_valid = 0u64;
    'outer: for (c, reps) in combo_list.iter() {
        for (g, gi) in &profiles {
            r.checked += 1;
            let gm = gate_mask[(c.vars | g.vars) as usize];
            let big_valid = gm & c.big & !g.big & all_b == 0;
            let small_valid = c.small & !g.small & all_s == 0;
            if big_valid != small_valid {
                let premises: Vec<Formula> = reps.iter().map(|&i| cls[i].rep.clone()).collect();
                let goal = cls[*gi].rep.clone();
                let concrete = check_recovery(
                    &Semantics::matrix(big.clone())?,
                    &Semantics::matrix(small.clone())?,
                    gate,
                    &premises,
                    &goal,
                )?;
                let p: Vec<String> = premises.iter().map(render).collect();
                r.fail(
                    format!("gated {} says {big_valid}, {} says {small_valid} for {} |= {}", big.name(), small.name(), p.join("; "), render(&goal)),
                    Some(concrete.to_json()),
                );
                break 'outer;
            }
            if big_valid {
                agree_valid += 1;
            }
        }
    }
    r.witnesses.push(
        Witness::new("coverage").value(format!(
            "{formulas} formulas in {} classes, {} designation profiles, {} premise-set profiles, {agree_valid} valid profile pairs",
            cls.len(),
            profiles.len(),
            combos.len()
        )),
    );
    Ok(r)
}

/// Searches unary formulas in `p`, breadth first by depth, for each value
/// `j` of `big` at each input `i` outside `small`, and checks that
/// `⊤(p) = ∘∘∘p` and `⊥(p) = ¬⊤(p)` are constantly `T` and `F`.
pub fn find_maximality_witnesses(
    big: &Nmatrix,
    small: &Nmatrix,
    depth: usize,
) -> Result<WitnessReport, Error> {
    if depth == 0 {
        return Err(Error::InvalidStructure("maximality search needs depth >= 1".into()));
    }
    let d = big.domain();
    let t = d.value_or_err("T")?;
    let f = d.value_or_err("F")?;
    let mut r = WitnessReport::new(format!("maximality:{}/{}", big.name(), small.name()))
        .bound("depth", depth as u64);
    let p = Formula::atom("p");
    for (kind, want) in [(Derived::Top, t), (Derived::Bot, f)] {
        let phi = build_derived(kind, std::slice::from_ref(&p))?;
        for v in d.values() {
            r.checked += 1;
            let out = unary_value(big, &phi, v)?;
            if out != want {
                r.fail(
                    format!("{} is {} at {}, expected {}", render(&phi), d.name(out), d.name(v), d.name(want)),
                    Some(json!({ "formula": render(&phi), "p": d.name(v), "value": d.name(out) })),
                );
            }
        }
        r.witnesses.push(Witness::new(kind.name()).formula(&phi).value(d.name(want)));
    }
    let inputs: Vec<Value> = d.values().filter(|v| small.domain().value(d.name(*v)).is_none()).collect();
    let n = d.len();
    let tables = Tables::new(big)?;
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    let mut all: Vec<(Vec<u8>, Formula)> = Vec::new();
    let start: Vec<u8> = (0..n as u8).collect();
    seen.insert(start.clone(), ());
    all.push((start, p.clone()));
    let mut layer_start = 0;
    let mut found: HashMap<(u8, u8), usize> = HashMap::new();
    let record = |found: &mut HashMap<(u8, u8), usize>, all: &[(Vec<u8>, Formula)], from: usize| {
        for (k, (vec, _)) in all.iter().enumerate().skip(from) {
            for &i in &inputs {
                found.entry((i.0, vec[i.index()])).or_insert(k);
            }
        }
    };
    record(&mut found, &all, 0);
    let target = inputs.len() * n;
    let mut reached = 0;
    for level in 1..=depth {
        if found.len() == target {
            break;
        }
        reached = level;
        let cur = all.len();
        let mut fresh: Vec<(Vec<u8>, Formula)> = Vec::new();
        let mut push = |vec: Vec<u8>, mk: &dyn Fn() -> Formula, fresh: &mut Vec<(Vec<u8>, Formula)>| {
            if seen.insert(vec.clone(), ()).is_none() {
                fresh.push((vec, mk()));
            }
        };
        for (u, c) in [Connective::Neg, Connective::Circ].into_iter().enumerate() {
            for (vec, phi) in &all[layer_start..cur] {
                let out = vec.iter().map(|&v| tables.un[u][v as usize]).collect();
                push(out, &|| Formula::unary(c, phi.clone()), &mut fresh);
            }
        }
        for (b, c) in Connective::BINARY.into_iter().enumerate() {
            for (i, (lv, lf)) in all[..cur].iter().enumerate() {
                for (j, (rv, rf)) in all[..cur].iter().enumerate() {
                    if i < layer_start && j < layer_start {
                        continue;
                    }
                    r.checked += 1;
                    let out = lv.iter().zip(rv).map(|(&x, &y)| tables.bin[b][x as usize * n + y as usize]).collect();
                    push(out, &|| Formula::binary(c, lf.clone(), rf.clone()), &mut fresh);
                }
            }
        }
        layer_start = cur;
        all.extend(fresh);
        record(&mut found, &all, cur);
    }
    r.bounds.insert("depth_used".into(), reached as u64);
    r.bounds.insert("functions".into(), all.len() as u64);
    for &i in &inputs {
        for j in d.values() {
            let label = format!("alpha[{}->{}]", d.name(i), d.name(j));
            match found.get(&(i.0, j.0)) {
                Some(&k) => r.witnesses.push(
                    Witness::new(label).formula(&all[k].1).assign("p", d.name(i)).value(d.name(j)),
                ),
                None => r.exhausted(format!("{label}: no unary formula of depth <= {depth}")),
            }
        }
    }
    Ok(r)
}

/// `p ≡ q` is designated in LFI3 exactly when `p` and `q` get the same
/// value.
pub fn check_congruence() -> Result<WitnessReport, Error> {
    let m = build_lfi3_twist();
    let d = m.domain();
    let (p, q) = (Formula::atom("p"), Formula::atom("q"));
    let phi = build_derived(Derived::Equiv3, &[p, q])?;
    let mut r = WitnessReport::new("congruence:LFI3");
    for a in d.values() {
        for b in d.values() {
            r.checked += 1;
            let out = eval_matrix(&m, |x| Some(if x == "p" { a } else { b }), &phi)?;
            let des = m.is_designated(out);
            r.witnesses.push(
                Witness::new(format!("{},{}", d.name(a), d.name(b)))
                    .formula(&phi)
                    .assign("p", d.name(a))
                    .assign("q", d.name(b))
                    .value(d.name(out)),
            );
            if des != (a == b) {
                r.fail(
                    format!("p={} q={} gives {}", d.name(a), d.name(b), d.name(out)),
                    Some(json!({ "p": d.name(a), "q": d.name(b), "value": d.name(out) })),
                );
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::structures::{cpl_matrix, lfi1_matrix};

    #[test]
    fn subalgebras_of_lfi3() {
        let m = build_lfi3_twist();
        assert!(check_subalgebra(&m, &["T", "F"]).unwrap().is_verified());
        assert!(check_subalgebra(&m, &["T", "b", "F"]).unwrap().is_verified());
        let bad = check_subalgebra(&m, &["T", "t"]).unwrap();
        assert!(bad.is_refuted());
        assert!(bad.failures.iter().any(|f| f.starts_with("circ(t) = {b}")), "{bad}");
        assert!(check_sublogic_inclusion(&m, &cpl_matrix()).unwrap().is_verified());
        assert!(check_sublogic_inclusion(&m, &lfi1_matrix()).unwrap().is_verified());
        assert!(check_sublogic_inclusion(&lfi1_matrix(), &m).is_err());
    }

    #[test]
    fn gates() {
        let m = build_lfi3_twist();
        let p = Formula::atom("p");
        let star = build_derived(Derived::CircStar, std::slice::from_ref(&p)).unwrap();
        let hash = build_derived(Derived::CircHash, std::slice::from_ref(&p)).unwrap();
        assert!(check_gate(&m, &["T", "F"], &star).unwrap().is_verified());
        assert!(check_gate(&m, &["T", "b", "F"], &hash).unwrap().is_verified());
        assert!(check_gate(&m, &["T", "b", "F"], &star).unwrap().is_refuted());
        assert!(check_gate(&m, &["T"], &parse("p & q").unwrap()).is_err());
    }

    #[test]
    fn one_recovery_instance() {
        let big = Semantics::matrix(build_lfi3_twist()).unwrap();
        let small = Semantics::matrix(lfi1_matrix()).unwrap();
        let hash = build_derived(Derived::CircHash, &[Formula::atom("p")]).unwrap();
        let r = check_recovery(&big, &small, &hash, &[parse("p").unwrap(), parse("~p").unwrap()], &parse("q").unwrap()).unwrap();
        assert!(r.is_verified());
        assert_eq!(r.witnesses.last().unwrap().evidence.as_ref().unwrap()["status"], "refuted");
    }

    #[test]
    fn small_recovery_sweep() {
        let star = build_derived(Derived::CircStar, &[Formula::atom("p")]).unwrap();
        let r = recovery_sweep(&build_lfi3_twist(), &cpl_matrix(), &star, &["p"], 2, 2).unwrap();
        assert!(r.is_verified(), "{r}");
        // the plain strong negation is not a recovery gate for CPL
        let bad = recovery_sweep(&build_lfi3_twist(), &cpl_matrix(), &parse("o p").unwrap(), &["p"], 1, 1).unwrap();
        assert!(bad.is_refuted());
    }

    #[test]
    fn maximality_and_congruence() {
        let r = find_maximality_witnesses(&build_lfi3_twist(), &lfi1_matrix(), 4).unwrap();
        assert!(r.is_verified(), "{r}");
        assert_eq!(r.witnesses.len(), 12);
        let tb = r.witnesses.iter().find(|w| w.label == "alpha[t->b]").unwrap();
        assert_eq!(tb.formula.as_deref(), Some("o p"));
        let c = check_congruence().unwrap();
        assert!(c.is_verified());
        assert_eq!(c.checked, 25);
    }
}
