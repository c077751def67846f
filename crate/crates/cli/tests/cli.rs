use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn lcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcc")).args(args).output().expect("run lcc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn proof(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "data", "proofs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn tower_theorem_in_l10() {
    let o = lcc(&["check", "--logic", "L:1,0", "--goal", "o o o p"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Valid"));
}

#[test]
fn mbcciw_refutes_double_circ() {
    let o = lcc(&["check", "--logic", "mbCciw", "--goal", "o o p"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("Refuted"), "{out}");
    assert!(out.contains("o o p = F"), "{out}");
}

#[test]
fn lfi3_contradiction_implies_consistency_of_consistency() {
    let o = lcc(&["check", "--logic", "LFI3", "--premises", "p & ~p", "--goal", "o o p"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn premises_split_on_semicolon() {
    let o = lcc(&["check", "--logic", "mbCciw", "--premises", "p; p -> q", "--goal", "q"]);
    assert_eq!(code(&o), 0);
    let o = lcc(&["check", "--logic", "LFI3", "--premises", "p; ~p", "--goal", "q"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn json_check_output() {
    let o = lcc(&["--json", "check", "--logic", "mbCciw", "--goal", "o o p"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "refuted");
    assert_eq!(v["goal_value"], "F");
    let o = lcc(&["--json", "check", "--logic", "L:1,0", "--goal", "o o o p"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "valid");
}

#[test]
fn parse_error_reports_position() {
    let o = lcc(&["check", "--logic", "LFI3", "--goal", "p & (q"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("position 6"), "{err}");
}

#[test]
fn unknown_logic_is_usage_error() {
    assert_eq!(code(&lcc(&["check", "--logic", "Nope", "--goal", "p"])), 2);
    assert_eq!(code(&lcc(&["check", "--logic", "L:1", "--goal", "p"])), 2);
}

#[test]
fn tables_lfi3_circ() {
    let o = lcc(&["tables", "--logic", "LFI3", "--connective", "circ"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for row in ["T -> T", "t -> b", "b -> F", "f -> b", "F -> T"] {
        assert!(out.contains(row), "{row} missing from\n{out}");
    }
}

#[test]
fn tables_mbcciw_circ_is_nondeterministic() {
    let o = lcc(&["--json", "tables", "--logic", "mbCciw", "--connective", "circ"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tables"]["circ"]["T"], serde_json::json!(["T", "t"]));
    assert_eq!(v["tables"]["circ"]["t"], serde_json::json!(["F"]));
}

#[test]
fn tables_l12_neg() {
    let o = lcc(&["--json", "tables", "--logic", "L:1,2", "--connective", "neg", "--semantics", "nmatrix"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let neg = &v["tables"]["neg"];
    assert_eq!(neg["t"], serde_json::json!(["f"]));
    assert_eq!(neg["b"], serde_json::json!(["b"]));
    assert_eq!(v["values"].as_array().unwrap().len(), 5);
}

#[test]
fn tables_of_hilbert_only_logic_fail() {
    assert_eq!(code(&lcc(&["tables", "--logic", "mbC"])), 2);
}

#[test]
fn axioms_lfi3() {
    let o = lcc(&["axioms", "--logic", "LFI3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("A4"));
    let o = lcc(&["--pretty", "axioms", "--logic", "LFI3"]);
    assert!(stdout(&o).contains("∘"));
}

#[test]
fn meta_lists_suites() {
    let o = lcc(&["meta"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("lfi3-properties"));
    assert_eq!(code(&lcc(&["meta", "--suite", "nonsense"])), 2);
}

#[test]
fn meta_lfi3_properties() {
    let o = lcc(&["--json", "meta", "--suite", "lfi3-properties"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for r in v.as_array().unwrap() {
        assert_eq!(r["status"], "verified", "{r}");
    }
}

#[test]
fn meta_maximality() {
    let o = lcc(&["meta", "--suite", "maximality", "--depth", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("verified"), "{out}");
    assert!(out.contains("alpha[t->f]"), "{out}");
}

#[test]
fn meta_fixed_point_small() {
    let o = lcc(&["meta", "--suite", "fixed-point", "--n", "0", "--m", "3", "--depth", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&lcc(&["meta", "--suite", "fixed-point", "--n", "1", "--m", "2"])), 2);
}

#[test]
fn synth_xor() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# xor\n00 -> 0\n01 -> 1\n10 -> 1\n11 -> 0").unwrap();
    let o = lcc(&["--json", "synth", "--table", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["width"], 2);
}

#[test]
fn synth_rejects_bad_table() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "0x -> 1").unwrap();
    assert_eq!(code(&lcc(&["synth", "--table", f.path().to_str().unwrap()])), 2);
}

#[test]
fn prove_valid_and_invalid() {
    let o = lcc(&["prove", "--file", &proof("mp.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ok"));
    let o = lcc(&["prove", "--file", &proof("bad_mp.json")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("step 3"));
    let o = lcc(&["--json", "prove", "--file", &proof("missing_axiom.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["step"], 2);
    assert_eq!(code(&lcc(&["prove", "--file", "/nonexistent/proof.json"])), 2);
}
