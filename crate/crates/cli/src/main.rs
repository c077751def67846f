use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value as Json};

use lcc::formula::{parse, render, render_pretty, Connective, Formula};
use lcc::hilbert::{check_proof, Proof};
use lcc::logics::{get_logic, LogicId, Preference};
use lcc::metalogic::{countermodel_holds, run_suite, SuiteParams, SUITES};
use lcc::semantics::{check_consequence, Nmatrix, Semantics, SemanticsKind, ValueSet};
use lcc::structures::{minimize, parse_truth_table, synthesize_minterms, verify_expr};

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "lcc", version, about = "Consequence checking for the Logics of Controlled Consistency and LFI3")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Unicode connectives (¬ ∘ ∧ ∨ →) in text output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the premises entail the goal.
    Check {
        #[arg(long)]
        logic: String,
        /// Premises separated by `;`.
        #[arg(long, default_value = "")]
        premises: String,
        #[arg(long)]
        goal: String,
        /// matrix, nmatrix, rnmatrix or any.
        #[arg(long, default_value = "any")]
        semantics: String,
    },
    /// Print the truth tables of a logic's semantics.
    Tables {
        #[arg(long)]
        logic: String,
        /// neg, circ, and, or or imp; all when omitted.
        #[arg(long)]
        connective: Option<String>,
        #[arg(long, default_value = "any")]
        semantics: String,
    },
    /// Synthesize a sum of products from a truth-table file.
    Synth {
        #[arg(long)]
        table: PathBuf,
    },
    /// Check a proof file.
    Prove {
        #[arg(long)]
        file: PathBuf,
    },
    /// Run a metalogic suite; lists the suites when none is given.
    Meta {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        /// Depth bound for premises in cross-checks.
        #[arg(long)]
        premise_depth: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// List a logic's axiom schemas.
    Axioms {
        #[arg(long)]
        logic: String,
    },
}

struct Fail(u8, String);

impl Fail {
    fn usage(msg: impl Into<String>) -> Fail {
        Fail(USAGE, msg.into())
    }
}

fn main() -> ExitCode {
    // `lcc ... | head` should not end in a panic message
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if info.to_string().contains("Broken pipe") {
            std::process::exit(0);
        }
        default_hook(info);
    }));
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Command::Check { logic, premises, goal, semantics } => cmd_check(&cli, logic, premises, goal, semantics),
        Command::Tables { logic, connective, semantics } => cmd_tables(&cli, logic, connective.as_deref(), semantics),
        Command::Synth { table } => cmd_synth(&cli, table),
        Command::Prove { file } => cmd_prove(&cli, file),
        Command::Meta { suite, depth, premise_depth, n, m } => {
            let params = SuiteParams { depth: *depth, premise_depth: *premise_depth, n: *n, m: *m };
            cmd_meta(&cli, suite.as_deref(), &params)
        }
        Command::Axioms { logic } => cmd_axioms(&cli, logic),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            if cli.json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn show(cli: &Cli, f: &Formula) -> String {
    if cli.pretty {
        render_pretty(f)
    } else {
        render(f)
    }
}

fn print_json(v: &Json) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn parse_logic(s: &str) -> Result<LogicId, Fail> {
    s.parse().map_err(|e: lcc::Error| Fail::usage(e.to_string()))
}

fn parse_formula(what: &str, s: &str) -> Result<Formula, Fail> {
    parse(s).map_err(|e| Fail::usage(format!("{what}: {e}\n  {s}\n  {}^", " ".repeat(e.position()))))
}

fn semantics_for(logic: &str, pref: &str) -> Result<Semantics, Fail> {
    let id = parse_logic(logic)?;
    let pref: Preference = pref.parse().map_err(|e: lcc::Error| Fail::usage(e.to_string()))?;
    get_logic(id).semantics_of(pref).map_err(|e| Fail::usage(e.to_string()))
}

fn cmd_check(cli: &Cli, logic: &str, premises: &str, goal: &str, pref: &str) -> Result<u8, Fail> {
    let ps: Vec<Formula> = premises
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(i, s)| parse_formula(&format!("premise {}", i + 1), s))
        .collect::<Result<_, _>>()?;
    let g = parse_formula("goal", goal)?;
    let sem = semantics_for(logic, pref)?;
    let v = check_consequence(&sem, &ps, &g);
    if let Some(cm) = v.countermodel() {
        match countermodel_holds(&sem, &ps, &g, cm) {
            Ok(true) => {}
            _ => return Err(Fail(INTERNAL, "countermodel failed to re-verify".into())),
        }
    }
    if cli.json {
        let mut j = v.to_json();
        j["semantics"] = json!(sem.name());
        print_json(&j);
    } else {
        let shown: Vec<String> = ps.iter().map(|p| show(cli, p)).collect();
        let turnstile = if cli.pretty { "⊨" } else { "|=" };
        let lhs = if shown.is_empty() { String::new() } else { format!("{} ", shown.join("; ")) };
        println!("{lhs}{turnstile} {}  [{}]", show(cli, &g), sem.name());
        match v.countermodel() {
            None => println!("Valid"),
            Some(cm) => {
                println!("Refuted; countermodel:");
                let a = &cm.assignment;
                for (f, val) in a.iter() {
                    println!("  {} = {}", show(cli, f), a.domain().name(val));
                }
            }
        }
    }
    Ok(if v.is_valid() { OK } else { FAILED })
}

fn cell_text(m: &Nmatrix, s: ValueSet) -> String {
    match s.single() {
        Some(v) if m.is_deterministic() => m.domain().name(v).to_string(),
        _ => m.domain().format_set(s),
    }
}

fn cell_json(m: &Nmatrix, s: ValueSet) -> Json {
    Json::from(s.iter().map(|v| m.domain().name(v)).collect::<Vec<_>>())
}

fn symbol(cli: &Cli, c: Connective) -> &'static str {
    match (c, cli.pretty) {
        (Connective::Neg, false) => "~",
        (Connective::Neg, true) => "¬",
        (Connective::Circ, false) => "o",
        (Connective::Circ, true) => "∘",
        (Connective::And, false) => "&",
        (Connective::And, true) => "∧",
        (Connective::Or, false) => "|",
        (Connective::Or, true) => "∨",
        (Connective::Imp, false) => "->",
        (Connective::Imp, true) => "→",
    }
}

fn cmd_tables(cli: &Cli, logic: &str, connective: Option<&str>, pref: &str) -> Result<u8, Fail> {
    let id = parse_logic(logic)?;
    if get_logic(id).hilbert_only() {
        return Err(Fail::usage(format!("{id} is Hilbert-only and has no tables")));
    }
    let sem = semantics_for(logic, pref)?;
    let m = sem.nmatrix_ref();
    let d = m.domain();
    let conns: Vec<Connective> = match connective {
        None => Connective::ALL.to_vec(),
        Some(name) => vec![Connective::from_name(name).ok_or_else(|| {
            Fail::usage(format!("unknown connective `{name}` (use neg, circ, and, or, imp)"))
        })?],
    };
    if cli.json {
        let mut tables = Map::new();
        for c in &conns {
            let mut t = Map::new();
            for a in d.values() {
                if c.is_unary() {
                    t.insert(d.name(a).into(), cell_json(m, m.unary(*c, a)));
                } else {
                    let row: Map<String, Json> = d
                        .values()
                        .map(|b| (d.name(b).to_string(), cell_json(m, m.binary(*c, a, b))))
                        .collect();
                    t.insert(d.name(a).into(), Json::Object(row));
                }
            }
            tables.insert(c.name().into(), Json::Object(t));
        }
        let designated: Vec<&str> = m.designated().iter().map(|v| d.name(v)).collect();
        print_json(&json!({
            "logic": id.canonical().to_string(),
            "semantics": sem.name(),
            "kind": match sem.kind() {
                SemanticsKind::Matrix => "matrix",
                SemanticsKind::Nmatrix => "nmatrix",
                SemanticsKind::RNmatrix => "rnmatrix",
            },
            "values": d.names(),
            "designated": designated,
            "restrictions": sem.restrictions().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "tables": tables,
        }));
        return Ok(OK);
    }
    println!("{} [{}], designated {}", id.canonical(), sem.name(), d.format_set(m.designated()));
    if !sem.restrictions().is_empty() {
        let r: Vec<String> = sem.restrictions().iter().map(|r| r.to_string()).collect();
        println!("restrictions: {}", r.join(", "));
    }
    let arrow = if cli.pretty { "↦" } else { "->" };
    for c in conns {
        println!();
        if c.is_unary() {
            println!("{} ({})", c.name(), symbol(cli, c));
            for a in d.values() {
                println!("  {} {arrow} {}", d.name(a), cell_text(m, m.unary(c, a)));
            }
            continue;
        }
        println!("{} ({})", c.name(), symbol(cli, c));
        let cells: Vec<Vec<String>> = d
            .values()
            .map(|a| d.values().map(|b| cell_text(m, m.binary(c, a, b))).collect())
            .collect();
        let w = cells.iter().flatten().map(|s| s.chars().count()).chain(d.names().iter().map(|n| n.len())).max().unwrap_or(1);
        let first = d.names().iter().map(|n| n.len()).max().unwrap_or(1);
        let mut header = format!("  {:first$} |", "");
        for n in d.names() {
            header.push_str(&format!(" {n:w$}"));
        }
        println!("{header}");
        println!("  {}", "-".repeat(header.chars().count() - 2));
        for (a, row) in d.names().iter().zip(&cells) {
            let mut line = format!("  {a:first$} |");
            for s in row {
                line.push_str(&format!(" {s:w$}"));
            }
            println!("{line}");
        }
    }
    Ok(OK)
}

fn read(path: &PathBuf) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn cmd_synth(cli: &Cli, path: &PathBuf) -> Result<u8, Fail> {
    let table = parse_truth_table(&read(path)?).map_err(|e| Fail::usage(e.to_string()))?;
    let sop = synthesize_minterms(&table);
    let min = minimize(&table);
    let ok = verify_expr(&sop, &table) && verify_expr(&min, &table);
    if cli.json {
        print_json(&json!({
            "width": table.width(),
            "minterms": sop.to_string(),
            "minimized": min.to_string(),
            "verified": ok,
        }));
    } else {
        println!("sum of minterms: {sop}");
        println!("minimized:       {min}");
        println!("{}", if ok { "verified against every defined row" } else { "VERIFICATION FAILED" });
    }
    Ok(if ok { OK } else { INTERNAL })
}

fn cmd_prove(cli: &Cli, path: &PathBuf) -> Result<u8, Fail> {
    let proof = Proof::from_json(&read(path)?).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
    match check_proof(&proof) {
        Ok(c) => {
            if cli.json {
                print_json(&json!({
                    "status": "ok",
                    "logic": c.logic.canonical().to_string(),
                    "conclusion": render(c.conclusion()),
                    "lines": c.lines.iter().map(render).collect::<Vec<_>>(),
                }));
            } else {
                for (i, l) in c.lines.iter().enumerate() {
                    println!("{:>3}. {}", i + 1, show(cli, l));
                }
                println!("ok: {} in {} ({} steps)", show(cli, c.conclusion()), c.logic.canonical(), c.lines.len());
            }
            Ok(OK)
        }
        Err(e) => {
            if cli.json {
                print_json(&json!({ "status": "error", "step": e.step, "message": e.kind.to_string() }));
            } else {
                println!("invalid proof: {e}");
            }
            Ok(FAILED)
        }
    }
}

fn cmd_meta(cli: &Cli, suite: Option<&str>, params: &SuiteParams) -> Result<u8, Fail> {
    let Some(name) = suite else {
        if cli.json {
            let list: Vec<Json> = SUITES.iter().map(|(n, d)| json!({ "suite": n, "description": d })).collect();
            print_json(&Json::from(list));
        } else {
            for (n, d) in SUITES {
                println!("{n:16} {d}");
            }
        }
        return Ok(OK);
    };
    let reports = run_suite(name, params).map_err(|e| match e {
        lcc::Error::UnknownSuite(_) => {
            let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            Fail::usage(format!("{e}; known suites: {}", names.join(", ")))
        }
        other => Fail::usage(other.to_string()),
    })?;
    if cli.json {
        print_json(&Json::from(reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()));
    } else {
        for r in &reports {
            print!("{r}");
        }
    }
    Ok(if reports.iter().any(|r| r.is_refuted()) { FAILED } else { OK })
}

fn cmd_axioms(cli: &Cli, logic: &str) -> Result<u8, Fail> {
    let spec = get_logic(parse_logic(logic)?);
    if cli.json {
        let list: Vec<Json> = spec
            .axioms
            .iter()
            .map(|a| json!({ "id": a.id, "schema": a.text, "pretty": a.render_pretty() }))
            .collect();
        print_json(&json!({ "logic": spec.name(), "axioms": list, "rules": ["MP"] }));
        return Ok(OK);
    }
    println!("{} ({} schemas, rule MP)", spec.name(), spec.axioms.len());
    for a in &spec.axioms {
        let text = if cli.pretty { a.render_pretty() } else { a.text.clone() };
        println!("  ({:>4})  {text}", a.id);
    }
    Ok(OK)
}
