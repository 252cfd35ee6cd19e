use std::process::{Command, Output};

use wzaccel_core::catalog::{builtin_catalog, load};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wzaccel")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--id", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(run(&["accelerate", "--theorem", "3", "--a", "1/2", "--b", "0", "--n", "3/2"]).status.code(), Some(2));
    // a = (2n+1)/4 is outside the tail condition
    assert_eq!(run(&["accelerate", "--theorem", "1", "--a", "1", "--b", "0", "--n", "3/2"]).status.code(), Some(2));
    assert_eq!(run(&["identity8", "--a", "-1"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_fails_with_codes() {
    let o = run(&["verify", "--id", "guillera-m14", "--digits", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("pass"));
    let o = run(&["verify", "--id", "ramanujan-6k1", "--digits", "25", "--max-terms", "15"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify", "--id", "glaisher"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped-rate-1"));
}

#[test]
fn emitted_spec_reloads() {
    let dir = tempfile::tempdir().unwrap();
    for (th, a, b, n) in [("2", "1/2", "1", "3/2"), ("1", "-1/2", "3", "1/2"), ("2", "1", "1", "5/2")] {
        let o = run(&["accelerate", "--theorem", th, "--a", a, "--b", b, "--n", n, "--emit", "spec"]);
        assert_eq!(o.status.code(), Some(0));
        let p = dir.path().join("gen.txt");
        std::fs::write(&p, stdout(&o)).unwrap();
        let back = load(&p).unwrap();
        assert_eq!(back.len(), 1);
    }
}

#[test]
fn emitted_guillera_copy_verifies() {
    let o = run(&["accelerate", "--theorem", "2", "--a", "1/2", "--b", "1", "--n", "3/2", "--emit", "spec"]);
    let text = stdout(&o);
    assert!(text.contains("poly = 13, 180, 820"));
    assert!(text.contains("[guillera-1024]"));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("gen.txt");
    std::fs::write(&p, &text).unwrap();
    let e = &load(&p).unwrap()[0];
    let r = wzaccel_core::precision::verify_entry(e, 40, 10_000).unwrap();
    assert!(r.pass());
}

#[test]
fn accelerate_report_certifies() {
    let o = run(&["accelerate", "--theorem", "2", "--a", "1", "--b", "0", "--n", "2", "--emit", "report", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("duality      ok"));
    assert!(s.contains("[az-zeta3]"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify-all", "--digits", "20", "--jobs", "3"][..],
        &["--format", "csv", "verify-all", "--digits", "20"],
        &["certify", "--mode", "randomized", "--points", "50", "--seed", "9"],
        &["catalog", "list"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn verify_all_jobs_keep_id_order() {
    let o = run(&["--format", "csv", "verify-all", "--digits", "20", "--jobs", "2"]);
    let ids: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect();
    let want: Vec<String> = builtin_catalog().into_iter().map(|e| e.id).collect();
    assert_eq!(ids, want);
}

#[test]
fn catalog_save_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.txt");
    assert_eq!(run(&["catalog", "save", "--out", p.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(load(&p).unwrap(), builtin_catalog());
}

#[test]
fn partial_sums_and_identity8() {
    assert_eq!(run(&["partial-sums", "--check", "guillera", "--n-max", "200"]).status.code(), Some(0));
    let o = run(&["identity8", "--a", "1", "--digits", "25"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}
