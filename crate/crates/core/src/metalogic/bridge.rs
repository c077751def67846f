use std::collections::HashMap;

use serde_json::json;

use crate::error::Error;
use crate::formula::{enumerate_formulas, render, subformula_closure, Connective, Formula};
use crate::hilbert::{neg_extension, BivaluationSpace};
use crate::logics::{semantics_of, LogicId, Preference};
use crate::semantics::Value;

use super::{Witness, WitnessReport};

struct Node {
    /// positions of `α`, `¬α`, `¬∘α` in the extension
    at: [usize; 3],
    op: Option<(Connective, Vec<usize>)>,
}

/// For every formula over `atoms` up to `depth`, enumerates all legal
/// bivaluations of `id` on the negation extension of its closure and checks
/// that `h(α) = (v(α), v(¬α), v(¬∘α))` is a legal assignment of the
/// logic's Nmatrix on the closure, designating exactly where `v` is 1.
pub fn check_bivaluation_bridge(id: LogicId, atoms: &[&str], depth: usize) -> Result<WitnessReport, Error> {
    let sem = semantics_of(id, Preference::Nmatrix)?;
    let m = sem.nmatrix_ref();
    let d = m.domain();
    if d.snapshot_width() != Some(3) {
        return Err(Error::InvalidStructure(format!("{} has no 3-bit snapshots", m.name())));
    }
    let mut lut: [Option<Value>; 8] = [None; 8];
    for v in d.values() {
        let s = d.snapshot(v).expect("snapshots");
        lut[(s.bit(0) as usize) << 2 | (s.bit(1) as usize) << 1 | s.bit(2) as usize] = Some(v);
    }
    let mut r = WitnessReport::new(format!("bivaluation-bridge:{}", id.canonical()))
        .bound("atoms", atoms.len() as u64)
        .bound("depth", depth as u64);
    let formulas = enumerate_formulas(atoms, depth);
    let mut leaves = 0u64;
    for phi in &formulas {
        let s = subformula_closure([phi]);
        let ext = neg_extension(std::slice::from_ref(phi));
        let space = BivaluationSpace::new(id, &ext)?;
        let cs = space.closure();
        let pos: HashMap<&Formula, usize> = s.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let ix = |f: &Formula| cs.index_of(f).expect("in the extension");
        let nodes: Vec<Node> = s
            .iter()
            .map(|f| Node {
                at: [ix(f), ix(&Formula::neg(f.clone())), ix(&Formula::neg(Formula::circ(f.clone())))],
                op: f.connective().map(|c| (c, f.children().into_iter().map(|g| pos[g]).collect())),
            })
            .collect();
        let mut h = vec![Value(0); nodes.len()];
        let mut bad: Option<(String, Vec<bool>)> = None;
        space.for_each(&[], |vals| {
            leaves += 1;
            for (k, n) in nodes.iter().enumerate() {
                let bits = (vals[n.at[0]] as usize) << 2 | (vals[n.at[1]] as usize) << 1 | vals[n.at[2]] as usize;
                let Some(v) = lut[bits] else {
                    bad = Some((format!("no value has snapshot {bits:03b} at `{}`", render(&s[k])), vals.to_vec()));
                    return false;
                };
                if m.is_designated(v) != vals[n.at[0]] {
                    bad = Some((format!("designation differs at `{}`", render(&s[k])), vals.to_vec()));
                    return false;
                }
                h[k] = v;
                if let Some((c, args)) = &n.op {
                    let ok = match args.as_slice() {
                        [a] => m.unary(*c, h[*a]).contains(v),
                        [a, b] => m.binary(*c, h[*a], h[*b]).contains(v),
                        _ => unreachable!("arity"),
                    };
                    if !ok {
                        bad = Some((format!("h(`{}`) = {} is outside its cell", render(&s[k]), d.name(v)), vals.to_vec()));
                        return false;
                    }
                }
            }
            true
        });
        r.checked += 1;
        if let Some((what, vals)) = bad {
            let bival: serde_json::Map<String, serde_json::Value> = cs
                .formulas()
                .iter()
                .zip(&vals)
                .map(|(f, b)| (render(f), json!(*b as u8)))
                .collect();
            r.fail(format!("{}: {what}", render(phi)), Some(json!({ "formula": render(phi), "bivaluation": bival })));
            break;
        }
    }
    r.bounds.insert("bivaluations".into(), leaves);
    r.witnesses.push(Witness::new("coverage").value(format!(
        "{} formulas, {leaves} legal bivaluations embedded",
        formulas.len()
    )));
    Ok(r)
}
