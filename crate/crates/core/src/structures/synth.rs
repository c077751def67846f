use std::collections::BTreeSet;

use crate::error::Error;
use crate::formula::Connective;
use crate::semantics::{Nmatrix, Value};

use super::{BooleanExpr, SwapRules, MAX_WIDTH};

/// A Boolean function table on `width` input bits; `None` marks a
/// don't-care row. Row `n` holds the input whose bits, read from `x1`,
/// spell `n` in binary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    width: usize,
    rows: Vec<Option<bool>>,
}

fn bits_of(n: usize, width: usize) -> Vec<bool> {
    (0..width).map(|i| n >> (width - 1 - i) & 1 == 1).collect()
}

fn index_of(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

impl TruthTable {
    pub fn from_fn<F: FnMut(&[bool]) -> Option<bool>>(
        width: usize,
        mut f: F,
    ) -> Result<TruthTable, Error> {
        if width > 2 * MAX_WIDTH {
            return Err(Error::TruthTable {
                line: 0,
                message: format!("width {width} is too large"),
            });
        }
        let rows = (0..1usize << width).map(|n| f(&bits_of(n, width))).collect();
        Ok(TruthTable { width, rows })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, bits: &[bool]) -> Option<bool> {
        self.rows[index_of(bits)]
    }

    /// Defined rows as `(input, output)`.
    pub fn defined(&self) -> impl Iterator<Item = (Vec<bool>, bool)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(n, r)| r.map(|b| (bits_of(n, self.width), b)))
    }
}

/// Parses `bits -> bit` lines; `#` starts a comment and `-` as output marks
/// a don't-care. Input bits may be separated by spaces or commas. Every
/// input of the width must appear exactly once.
pub fn parse_truth_table(text: &str) -> Result<TruthTable, Error> {
    let err = |line: usize, m: String| Error::TruthTable { line, message: m };
    let mut width = None;
    let mut rows: Vec<Option<Option<bool>>> = Vec::new();
    let mut last = 0;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (lhs, rhs) = content
            .split_once("->")
            .ok_or_else(|| err(line, "expected `bits -> bit`".into()))?;
        let mut bits = Vec::new();
        for c in lhs.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == ',' || c == '(' || c == ')' => {}
                c => return Err(err(line, format!("unexpected `{c}` in input bits"))),
            }
        }
        let out = match rhs.trim() {
            "0" => Some(false),
            "1" => Some(true),
            "-" => None,
            o => return Err(err(line, format!("output must be 0, 1 or -, found `{o}`"))),
        };
        let w = *width.get_or_insert(bits.len());
        if bits.is_empty() || w > MAX_WIDTH {
            return Err(err(line, format!("input width must be between 1 and {MAX_WIDTH}")));
        }
        if bits.len() != w {
            return Err(err(line, format!("expected {w} input bits, found {}", bits.len())));
        }
        if rows.is_empty() {
            rows = vec![None; 1 << w];
        }
        let slot = &mut rows[index_of(&bits)];
        if slot.is_some() {
            return Err(err(line, "duplicate row".into()));
        }
        *slot = Some(out);
    }
    let width = width.ok_or_else(|| err(last, "no rows".into()))?;
    if let Some(n) = rows.iter().position(|r| r.is_none()) {
        let s: String = bits_of(n, width).iter().map(|&b| if b { '1' } else { '0' }).collect();
        return Err(err(last, format!("missing row {s}")));
    }
    Ok(TruthTable {
        width,
        rows: rows.into_iter().map(|r| r.expect("checked")).collect(),
    })
}

fn literal(i: usize, positive: bool) -> BooleanExpr {
    if positive {
        BooleanExpr::Var(i)
    } else {
        BooleanExpr::not(BooleanExpr::Var(i))
    }
}

/// Unsimplified sum of products: one full minterm per row with output 1.
pub fn synthesize_minterms(table: &TruthTable) -> BooleanExpr {
    let terms = table
        .defined()
        .filter(|(_, out)| *out)
        .map(|(bits, _)| {
            BooleanExpr::and_all(bits.iter().enumerate().map(|(i, &b)| literal(i, b)).collect())
        })
        .collect();
    BooleanExpr::or_all(terms)
}

/// Whether `e` agrees with every defined row of `table`.
pub fn verify_expr(e: &BooleanExpr, table: &TruthTable) -> bool {
    e.min_width() <= table.width && table.defined().all(|(bits, out)| e.eval(&bits) == out)
}

/// An implicant: `value` on the bits not in `free`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Cube {
    free: usize,
    value: usize,
}

impl Cube {
    fn covers(self, n: usize) -> bool {
        n & !self.free == self.value
    }

    fn literals(self, width: usize) -> usize {
        width - self.free.count_ones() as usize
    }
}

/// Sum of prime implicants covering the 1-rows, using don't-cares to
/// enlarge cubes. The cover is chosen greedily after essential implicants,
/// so it is small but not guaranteed minimal.
pub fn minimize(table: &TruthTable) -> BooleanExpr {
    let w = table.width;
    let ones: Vec<usize> = (0..table.rows.len()).filter(|&n| table.rows[n] == Some(true)).collect();
    let mut level: BTreeSet<Cube> = (0..table.rows.len())
        .filter(|&n| table.rows[n] != Some(false))
        .map(|n| Cube { free: 0, value: n })
        .collect();
    let mut primes = BTreeSet::new();
    while !level.is_empty() {
        let cubes: Vec<Cube> = level.iter().copied().collect();
        let mut merged = vec![false; cubes.len()];
        let mut next = BTreeSet::new();
        for i in 0..cubes.len() {
            for j in i + 1..cubes.len() {
                let (a, b) = (cubes[i], cubes[j]);
                let diff = a.value ^ b.value;
                if a.free == b.free && diff.count_ones() == 1 {
                    next.insert(Cube {
                        free: a.free | diff,
                        value: a.value & !diff,
                    });
                    merged[i] = true;
                    merged[j] = true;
                }
            }
        }
        primes.extend(cubes.iter().zip(&merged).filter(|(_, m)| !**m).map(|(c, _)| *c));
        level = next;
    }
    // keep only primes that cover some 1-row
    let primes: Vec<Cube> = primes
        .into_iter()
        .filter(|c| ones.iter().any(|&n| c.covers(n)))
        .collect();
    let mut chosen: Vec<Cube> = Vec::new();
    let mut uncovered: BTreeSet<usize> = ones.iter().copied().collect();
    for &n in &ones {
        let covering: Vec<&Cube> = primes.iter().filter(|c| c.covers(n)).collect();
        if covering.len() == 1 && !chosen.contains(covering[0]) {
            chosen.push(*covering[0]);
        }
    }
    uncovered.retain(|&n| !chosen.iter().any(|c| c.covers(n)));
    while !uncovered.is_empty() {
        let best = primes
            .iter()
            .filter(|c| !chosen.contains(c))
            .max_by_key(|c| {
                let gain = uncovered.iter().filter(|&&n| c.covers(n)).count();
                (gain, std::cmp::Reverse(c.literals(w)), std::cmp::Reverse(**c))
            })
            .copied()
            .expect("primes cover all ones");
        uncovered.retain(|&n| !best.covers(n));
        chosen.push(best);
    }
    chosen.sort_by_key(|c| (c.literals(w), std::cmp::Reverse(c.value), c.free));
    let terms = chosen
        .iter()
        .map(|c| {
            BooleanExpr::and_all(
                (0..w)
                    .filter(|i| c.free >> (w - 1 - i) & 1 == 0)
                    .map(|i| literal(i, c.value >> (w - 1 - i) & 1 == 1))
                    .collect(),
            )
        })
        .collect();
    let e = BooleanExpr::or_all(terms);
    debug_assert!(verify_expr(&e, table));
    e
}

/// Recovers coordinate rules from a deterministic matrix over a snapshot
/// domain. Inputs that are not domain snapshots are don't-cares.
pub fn twist_from_matrix(m: &Nmatrix) -> Result<SwapRules, Error> {
    if !m.is_deterministic() {
        return Err(Error::InvalidStructure(format!(
            "{} is not deterministic",
            m.name()
        )));
    }
    let d = m.domain();
    let w = d
        .snapshot_width()
        .ok_or_else(|| Error::InvalidStructure("domain has no snapshots".into()))?;
    let mut rules = SwapRules::new(w);
    for c in Connective::ALL {
        let arity = if c.is_unary() { 1 } else { 2 };
        for k in 0..w {
            let table = TruthTable::from_fn(arity * w, |bits| {
                let args: Option<Vec<Value>> = bits
                    .chunks(w)
                    .map(|ch| d.value_of_snapshot(&crate::semantics::Snapshot(ch.to_vec())))
                    .collect();
                let out = m.cell(c, &args?).single().expect("deterministic");
                Some(d.snapshot(out).expect("snapshot domain").bit(k))
            })?;
            rules.set(c, k + 1, Some(minimize(&table)))?;
        }
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{
        b10_spec, build_lfi3_twist, build_swap_nmatrix, generate_snapshot_domain,
    };

    #[test]
    fn trivial_syntheses() {
        let zero = TruthTable::from_fn(2, |_| Some(false)).unwrap();
        assert_eq!(synthesize_minterms(&zero).to_string(), "0");
        assert_eq!(minimize(&zero).to_string(), "0");
        let id = TruthTable::from_fn(1, |b| Some(b[0])).unwrap();
        assert_eq!(synthesize_minterms(&id), BooleanExpr::Var(0));
        assert_eq!(minimize(&id), BooleanExpr::Var(0));
        let one = TruthTable::from_fn(3, |_| Some(true)).unwrap();
        assert_eq!(minimize(&one).to_string(), "1");
    }

    #[test]
    fn majority_minimizes_to_three_terms() {
        let maj = TruthTable::from_fn(3, |b| Some(b.iter().filter(|x| **x).count() >= 2)).unwrap();
        let e = minimize(&maj);
        assert!(verify_expr(&e, &maj));
        assert_eq!(e.to_string(), "x1 & x2 | x1 & x3 | x2 & x3");
        assert!(verify_expr(&synthesize_minterms(&maj), &maj));
    }

    #[test]
    fn parses_files() {
        let t = parse_truth_table("# xor\n00 -> 0\n0 1 -> 1\n1,0 -> 1\n11 -> -  # unused\n").unwrap();
        assert_eq!(t.width(), 2);
        assert_eq!(t.get(&[true, true]), None);
        assert_eq!(minimize(&t).to_string(), "x1 | x2");
        let missing = parse_truth_table("0 -> 1\n").unwrap_err();
        assert!(matches!(missing, Error::TruthTable { line: 1, .. }));
        let dup = parse_truth_table("0 -> 1\n0 -> 0\n").unwrap_err();
        assert!(matches!(dup, Error::TruthTable { line: 2, .. }));
        assert!(parse_truth_table("01 -> 2").is_err());
        assert!(parse_truth_table("01 -> 1\n1 -> 0").is_err());
        assert!(parse_truth_table("").is_err());
    }

    #[test]
    fn lfi3_and_third_coordinate() {
        let d = generate_snapshot_domain(&b10_spec()).unwrap();
        let m = build_lfi3_twist();
        let table = TruthTable::from_fn(6, |bits| {
            let a = d.value_of_snapshot(&crate::semantics::Snapshot(bits[..3].to_vec()))?;
            let b = d.value_of_snapshot(&crate::semantics::Snapshot(bits[3..].to_vec()))?;
            let z = m.binary(Connective::And, a, b).single().unwrap();
            Some(d.snapshot(z).unwrap().bit(2))
        })
        .unwrap();
        let expected = BooleanExpr::parse("(~a2 & b3) | (a3 & ~b2) | (a3 & b3)", 3).unwrap();
        for e in [synthesize_minterms(&table), minimize(&table)] {
            assert!(verify_expr(&e, &table));
            for (bits, _) in table.defined() {
                assert_eq!(e.eval(&bits), expected.eval(&bits));
            }
        }
    }

    #[test]
    fn twist_round_trip() {
        let m = build_lfi3_twist();
        let rules = twist_from_matrix(&m).unwrap();
        let rebuilt =
            build_swap_nmatrix("LFI3", m.domain(), &rules, &BooleanExpr::Var(0)).unwrap();
        assert_eq!(rebuilt, m);
    }
}
