use serde_json::json;

use crate::error::Error;
use crate::formula::{enumerate_formulas, render, Formula};
use crate::semantics::{check_consequence, Semantics};

use super::suites::countermodel_holds;
use super::{Witness, WitnessReport};

const MAX_REPORTED: usize = 5;

/// Compares the verdicts of each pair of semantics on `⊨ α` for every
/// formula `α` over `atoms` up to `depth`, and on `β ⊨ α` for every `β` up
/// to `premise_depth`.
pub fn cross_check_semantics(
    pairs: &[(Semantics, Semantics)],
    atoms: &[&str],
    depth: usize,
    premise_depth: usize,
) -> Result<WitnessReport, Error> {
    let names: Vec<String> = pairs
        .iter()
        .map(|(a, b)| format!("{}~{}", a.name(), b.name()))
        .collect();
    let mut r = WitnessReport::new(format!("cross-check:{}", names.join(",")))
        .bound("atoms", atoms.len() as u64)
        .bound("depth", depth as u64)
        .bound("premise_depth", premise_depth as u64);
    let goals = enumerate_formulas(atoms, depth);
    let premises = enumerate_formulas(atoms, premise_depth.min(depth));
    let sets: Vec<Option<&Formula>> = std::iter::once(None).chain(premises.iter().map(Some)).collect();
    for (k, (a, b)) in pairs.iter().enumerate() {
        let mut disagreements = 0usize;
        let mut valid = 0u64;
        for prem in &sets {
            let ps: Vec<Formula> = prem.iter().map(|f| (*f).clone()).collect();
            for g in &goals {
                r.checked += 1;
                let (va, vb) = (check_consequence(a, &ps, g), check_consequence(b, &ps, g));
                for (sem, v) in [(a, &va), (b, &vb)] {
                    if let Some(cm) = v.countermodel() {
                        if !countermodel_holds(sem, &ps, g, cm)? {
                            r.fail(format!("{} countermodel fails to re-verify", sem.name()), Some(v.to_json()));
                        }
                    }
                }
                if va.is_valid() == vb.is_valid() {
                    valid += va.is_valid() as u64;
                    continue;
                }
                disagreements += 1;
                if disagreements <= MAX_REPORTED {
                    let shown = format!(
                        "{} |= {}",
                        ps.first().map(render).unwrap_or_default(),
                        render(g)
                    );
                    r.fail(
                        format!("{}: {} says {}, {} says {}", shown.trim(), a.name(), va.is_valid(), b.name(), vb.is_valid()),
                        Some(json!({ "sequent": shown.trim(), a.name(): va.to_json(), b.name(): vb.to_json() })),
                    );
                }
            }
        }
        r.witnesses.push(Witness::new(&names[k]).value(format!(
            "{} sequents, {valid} valid in both, {disagreements} disagreements",
            sets.len() * goals.len()
        )));
    }
    Ok(r)
}
