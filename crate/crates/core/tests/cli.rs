use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use tropical_lstar::{witnesses, Wfa};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropical-lstar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write_wfa(dir: &TempDir, name: &str, wfa: &Wfa) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, wfa.to_json()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// `key: value` line from a learn summary.
fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .to_string()
}

#[test]
fn eval_three_state() {
    let dir = TempDir::new().unwrap();
    let f = write_wfa(&dir, "a.json", &witnesses::three_state());
    let o = run(&["eval", "--wfa", s(&f), "ab", "", "a"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "35\n13\n26\n");
}

#[test]
fn equiv_self_and_difference() {
    let dir = TempDir::new().unwrap();
    let a = write_wfa(&dir, "a.json", &witnesses::three_state());
    let o = run(&["equiv", s(&a), s(&a)]);
    assert_eq!((code(&o), stdout(&o)), (0, "Eq.\n".to_string()));

    let counter = witnesses::counter();
    let b = write_wfa(&dir, "b.json", &counter);
    let o = run(&["equiv", s(&b), s(&a)]);
    // Alphabets differ, which is an input error.
    assert_eq!(code(&o), 2);

    let o = run(&["gen", "--seed", "1", "--out", s(&dir.path().join("g.json"))]);
    assert_eq!(code(&o), 0);
    let o = run(&["equiv", s(&a), s(&dir.path().join("g.json")), "--max-len", "3"]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).starts_with("counterexample: "));
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--seed", "42", "--states", "3", "--alphabet", "2"]);
    let b = run(&["gen", "--seed", "42", "--states", "3", "--alphabet", "2"]);
    let c = run(&["gen", "--seed", "43", "--states", "3", "--alphabet", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    let wfa = Wfa::from_json(&stdout(&a)).unwrap();
    assert_eq!(wfa.dim(), 3);
}

#[test]
fn learn_converges_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("h.json");
    let log = dir.path().join("events.jsonl");
    let qlog = dir.path().join("queries.jsonl");
    let o = run(&[
        "learn",
        "--target",
        "builtin:three-state",
        "--out",
        s(&out),
        "--log",
        s(&log),
        "--query-log",
        s(&qlog),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(field(&text, "status"), "converged");
    assert_eq!(field(&text, "algorithm"), "column-closed");

    // States are stored by index, so a second round trip is exact.
    let hyp = Wfa::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(Wfa::from_json(&hyp.to_json()).unwrap(), hyp);
    let target = write_wfa(&dir, "t.json", &witnesses::three_state());
    let o = run(&["equiv", s(&target), s(&out)]);
    assert_eq!(stdout(&o), "Eq.\n");

    let queries = std::fs::read_to_string(&qlog).unwrap();
    let membership = field(&text, "membership_queries").parse::<usize>().unwrap();
    assert_eq!(
        queries.lines().filter(|l| l.contains("\"membership\"")).count(),
        membership
    );
    assert!(std::fs::read_to_string(&log).unwrap().lines().count() > 0);
}

#[test]
fn learn_counter_hits_row_budget() {
    for algorithm in ["column-closed", "van-heerdt"] {
        let o = run(&[
            "learn",
            "--target",
            "builtin:counter",
            "--algorithm",
            algorithm,
            "--max-rows",
            "10",
        ]);
        assert_eq!(code(&o), 10, "{algorithm}");
        let text = stdout(&o);
        assert_eq!(field(&text, "budget"), "rows");
        assert_eq!(field(&text, "rows"), "10");
    }
}

#[test]
fn hybrid_needs_opt_in_and_stalls() {
    let base = [
        "learn", "--target", "builtin:three-state", "--algorithm", "hybrid", "--row", "a", "--row", "ab",
        "--row", "b", "--col", "a", "--eq-answer", "ab", "--eq-answer", "ab",
    ];
    assert_eq!(code(&run(&base)), 2);
    let mut args = base.to_vec();
    args.push("--unsound");
    let o = run(&args);
    assert_eq!(code(&o), 13);
    assert_eq!(field(&stdout(&o), "budget"), "stalled");
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["learn"])), 2);
    assert_eq!(code(&run(&["learn", "--target", "builtin:nope"])), 2);
    assert_eq!(code(&run(&["learn", "--target", "builtin:three-state", "--algorithm", "nope"])), 2);
    assert_eq!(code(&run(&["eval", "--wfa", "/nonexistent.json", "a"])), 2);
    let dir = TempDir::new().unwrap();
    let f = write_wfa(&dir, "a.json", &witnesses::three_state());
    assert_eq!(code(&run(&["eval", "--wfa", s(&f), "z"])), 2);
}

#[test]
fn minimize_preserves_weights() {
    let dir = TempDir::new().unwrap();
    let learned = dir.path().join("h.json");
    let o = run(&["learn", "--target", "builtin:three-state", "--algorithm", "van-heerdt", "--out", s(&learned)]);
    assert_eq!(code(&o), 0);
    let small = dir.path().join("m.json");
    let o = run(&["minimize", "--wfa", s(&learned), "--max-len", "5", "--out", s(&small)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let before = Wfa::from_json(&std::fs::read_to_string(&learned).unwrap()).unwrap();
    let after = Wfa::from_json(&std::fs::read_to_string(&small).unwrap()).unwrap();
    assert!(after.dim() <= before.dim());
    let o = run(&["equiv", s(&learned), s(&small), "--max-len", "5"]);
    assert_eq!(stdout(&o), "Eq.\n");
}

#[test]
fn demo_prints_worked_values() {
    let o = run(&["demo"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("row-closed table hypothesis f(ab) = 36"));
    assert!(text.contains("target f(ab) = 35"));
    assert!(text.contains("(stalled)"));
}
