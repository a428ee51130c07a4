use std::path::PathBuf;

use k3audit::cli::run;

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("k3audit-{}-{name}", std::process::id()))
}

fn run_to_file(args: &[&str], name: &str) -> (i32, String) {
    let path = tmp(name);
    let mut argv = vec!["k3audit"];
    argv.extend_from_slice(args);
    let p = path.to_str().unwrap().to_string();
    argv.extend(["--output", &p]);
    let code = run(argv);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    let _ = std::fs::remove_file(&path);
    (code, text)
}

#[test]
fn audit_f384_passes_with_witness_50() {
    let (code, text) = run_to_file(&["audit", "--group", "F384"], "f384");
    assert_eq!(code, 0);
    assert!(text.contains("contribution 50"));
    assert!(text.ends_with("VERDICT F384 PASS\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(["k3audit", "verify", "--case", "nosuch"]), 2);
    assert_eq!(run(["k3audit", "audit", "--group", "Z7"]), 2);
    assert_eq!(run(["k3audit", "delpezzo", "--degree", "10"]), 2);
    assert_eq!(run(["k3audit", "molien", "--group", "l27", "--degree", "4", "--character", "5"]), 2);
    assert_eq!(run(["k3audit", "verify", "--case", "1a", "--n-bound", "12"]), 2);
    assert_eq!(run(["k3audit"]), 2);
}

#[test]
fn case_10_reports_the_computed_dimension() {
    let (code, text) = run_to_file(&["verify", "--case", "10"], "case10");
    assert_eq!(code, 1);
    assert!(text.contains("CHECK sextic-count case-10/sextic-count FAIL dimension 4 summed over 4 characters"));
    assert!(text.contains("CHECK irreducible-candidates case-10/uniqueness PASS"));
}

#[test]
fn reports_are_deterministic() {
    let a = run_to_file(&["verify", "--case", "all", "--format", "json"], "det-a");
    let b = run_to_file(&["verify", "--case", "all", "--format", "json"], "det-b");
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    let ids: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["case-1a", "case-1b", "case-2", "case-3a", "case-3b", "case-9", "case-10", "case-11a", "case-11b"]);
}

#[test]
fn other_subcommands() {
    let (code, text) = run_to_file(&["molien", "--group", "valentiner", "--degree", "6", "--character", "0"], "molien");
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("dimension 1 (monomial trace 1)"));
    let (code, text) = run_to_file(&["delpezzo", "--degree", "5", "--emit-graph"], "dp5");
    assert_eq!(code, 0);
    assert!(text.contains("automorphisms 120") && text.contains("graph G {"));
    let (code, text) = run_to_file(&["derive", "--pipeline", "cs5"], "cs5");
    assert_eq!(code, 0);
    assert!(text.contains("a = (0,0,2,-2,2,1,-6)"));
    let (code, _) = run_to_file(&["audit", "--group", "all", "--primes", "11,13"], "all");
    assert_eq!(code, 0);
}
