use preproj::report::RunReport;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ppw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppw")).args(args).output().expect("ppw runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn quiver_file(name: &str) -> String {
    format!("{}/../../data/quivers/{name}.quiver", env!("CARGO_MANIFEST_DIR"))
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("ppw-{}-{name}", std::process::id()))
}

#[test]
fn sortable_factorization_and_exit_codes() {
    let a3 = quiver_file("a3");
    let o = ppw(&["sortable", "--quiver", &a3, "--word", "1 2 3 1 2 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "c0=1 2 3 | c1=1 2 | c2=1");

    let o = ppw(&["sortable", "--type", "A2", "--word", "2 3"]);
    assert_eq!(o.status.code(), Some(1), "unknown letter is an input error");

    let o = ppw(&["sortable", "--type", "A3", "--word", "2 3"]);
    assert_eq!(o.status.code(), Some(0));

    let o = ppw(&["sortable", "--type", "A2", "--word", "1 1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not reduced"));

    let o = ppw(&["sortable", "--type", "A2", "--word", "2 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("not c-sortable"));
}

#[test]
fn quiver_file_and_builtin_agree() {
    let a = ppw(&["piw", "--quiver", &quiver_file("kronecker"), "--word", "1 2 1 2", "--diagram"]);
    let b = ppw(&["piw", "--type", "kronecker", "--word", "1 2 1 2", "--diagram"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("Pi_w e_1"));
}

#[test]
fn non_sortable_verify_skips() {
    let path = tmp("skip.json");
    let o = ppw(&["verify", "--type", "A2", "--word", "2 1", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let r = RunReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(r.sorting_word, None);
    assert!(r.checks.iter().all(|c| c.verdict.to_string() == "SKIP" && c.reason == "not c-sortable"));
}

#[test]
fn verify_json_round_trip_is_reproducible() {
    let (p1, p2) = (tmp("r1.json"), tmp("r2.json"));
    let a3 = quiver_file("a3");
    for (p, field) in [(&p1, "rat"), (&p2, "rat")] {
        let o = ppw(&["verify", "--quiver", &a3, "--word", "1,2,3,2,1,2", "--field", field, "--seed", "5", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let r1 = RunReport::from_json(&std::fs::read_to_string(&p1).unwrap()).unwrap();
    let r2 = RunReport::from_json(&std::fs::read_to_string(&p2).unwrap()).unwrap();
    std::fs::remove_file(&p1).ok();
    std::fs::remove_file(&p2).ok();
    assert_eq!(r1.canonical(), r2.canonical());
    assert_eq!(RunReport::from_json(&r1.to_json()).unwrap(), r1);
    assert_eq!(r1.sorting_word, Some(vec![1, 2, 3, 1, 2, 1]));
    assert_eq!(r1.summary.fail, 0);
    assert_eq!(r1.input.word, vec![1, 2, 3, 2, 1, 2]);
}

#[test]
fn prime_field_endo_matches_rational() {
    let args = |f: &'static str| ["endo", "--type", "A3", "--word", "1 2 3 1 2 1", "--field", f];
    let r = ppw(&args("rat"));
    let p = ppw(&args("gfp:1048583"));
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(stdout(&r), stdout(&p));
    assert!(stdout(&r).contains("relations { a*b; }"));
    assert_eq!(ppw(&args("gfp:7")).status.code(), Some(1));
}

#[test]
fn gldim_and_modules() {
    let o = ppw(&["gldim", "--type", "kronecker", "--word", "1 2 1 2 1 2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "gl.dim A_w = 2, gl.dim B_w = 2");

    let o = ppw(&["module", "--type", "A3", "--word", "1 2 3 1 2 1", "--kind", "T"]);
    let lines: Vec<String> = stdout(&o).lines().map(|l| l.split(':').next().unwrap().to_string()).collect();
    assert_eq!(lines, ["T (position 3)", "T (position 5)", "T (position 6)"]);
}

#[test]
fn corpus_reports_brute_force_count() {
    let path = tmp("corpus.json");
    let o = ppw(&["corpus", "--type", "A2", "--max-len", "3", "--suite", "tilting", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["words"], 4);
    assert_eq!(v["brute_force_count"], 5);
    assert_eq!(v["summary"]["fail"], 0);
}
