use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn gsite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsite")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn dense_on_d12_passes() {
    let o = gsite(&["check-topology", &fixture("d12.cat"), "-t", &fixture("dense-d12.gtop")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("all axioms hold"));
}

#[test]
fn atomic_on_cospan_fails_with_witness() {
    let o = gsite(&["check-topology", &fixture("cospan.cat"), "--kind", "atomic"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("stability: {f} covers Z but its pullback along g does not cover Y"));
}

#[test]
fn continuity_counterexample() {
    let o = gsite(&[
        "check-continuous",
        &fixture("arrow.cat"),
        "-t",
        &fixture("arrow-j.gtop"),
        "--arrow",
        "f",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: {} covers 1"), "{}", stdout(&o));
}

#[test]
fn terminal_has_two_topologies() {
    let o = gsite(&["enumerate-topologies", &fixture("terminal.cat")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("2 topologies on terminal\n"));
}

#[test]
fn usage_errors_exit_2() {
    let o = gsite(&["frobnicate"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("Usage:"));
    let o = gsite(&["validate", &fixture("d12.cat"), "--bogus"]);
    assert_eq!(code(&o), 2);
    let o = gsite(&["check-topology", &fixture("d12.cat")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("expected one topology"));
}

#[test]
fn help_exits_0() {
    let o = gsite(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("check-gtop"));
}

#[test]
fn diagnostics_carry_spans() {
    let dir = TempDir::new().unwrap();
    let path = scratch(&dir, "bad.cat");
    std::fs::write(&path, "category bad\nobject A\nobject B\narrow f : A -> C\n").unwrap();
    let o = gsite(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("bad.cat:4:16: error[unknown-object]"), "{err}");
}

#[test]
fn output_flag_writes_canonical_artifacts() {
    let dir = TempDir::new().unwrap();
    let path = scratch(&dir, "dense.gtop");
    let o = gsite(&[
        "make-topology",
        &fixture("d12.cat"),
        "--kind",
        "dense",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, std::fs::read_to_string(fixture("dense-d12.gtop")).unwrap());

    let path = scratch(&dir, "d12.wit");
    let o = gsite(&[
        "find-objects",
        &fixture("d12.cat"),
        "--structure",
        "group",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        std::fs::read_to_string(fixture("d12.wit")).unwrap()
    );
}

#[test]
fn verification_toggle() {
    let args = [
        "pullback",
        &fixture("cospan.cat"),
        "-t",
        &fixture("atomic-cospan.gtop"),
        "--arrow",
        "g",
    ];
    let o = gsite(&args);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("is not a Grothendieck topology"));
    let mut quiet = args.to_vec();
    quiet.push("--no-verify");
    let o = gsite(&quiet);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("g*(atomic(Z)) at Y"));
}

#[test]
fn caps_are_exit_2() {
    let o = gsite(&["enumerate-topologies", &fixture("d12.cat"), "--cap-search", "10"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("resource cap exceeded"));
    let o = Command::new(env!("CARGO_BIN_EXE_gsite"))
        .args(["check-topology", &fixture("d12.cat"), "-t", &fixture("dense-d12.gtop")])
        .env("GSITE_CAP_SIEVES", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = gsite(&[
        "check-topology",
        &fixture("d12.cat"),
        "-t",
        &fixture("dense-d12.gtop"),
        "--cap-sieves",
        "3",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn algebra_verbs() {
    let o = gsite(&["check-object", &fixture("z2.cat"), &fixture("z2.wit"), "--abelian"]);
    assert_eq!(code(&o), 0);
    let o = gsite(&["check-hom", &fixture("z2.cat"), &fixture("z2.wit")]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("hom id_2 from witness 1 to witness 1: holds"));
    assert!(out.contains("hom 2->2[0,0] from witness 1 to witness 1: holds"));
    assert!(out.contains("hom flip from witness 1 to witness 1: fails"));
}

#[test]
fn gtop_verbs() {
    let o = gsite(&[
        "check-gtop",
        &fixture("d12.cat"),
        &fixture("d12.wit"),
        "--kind",
        "trivial",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("reading: object level"));
    let o = gsite(&[
        "check-gtop",
        &fixture("d30.cat"),
        "--functor-level",
        "--mul",
        "join",
        "--kind",
        "dense",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("reading: functor level"));
    let o = gsite(&[
        "check-gtop",
        &fixture("d12.cat"),
        "--functor-level",
        "--mul",
        "join",
        "--kind",
        "dense",
        "--submonoid",
        &fixture("d6.cat"),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("submonoid square: commutes"));
    let o = gsite(&[
        "check-gtop",
        &fixture("d12.cat"),
        "--functor-level",
        "--mul",
        "meet",
        "--unit",
        "1",
        "--kind",
        "discrete",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn lattice_verbs() {
    let o = gsite(&[
        "join",
        &fixture("arrow.cat"),
        "-t",
        &fixture("arrow-j.gtop"),
        "--kind",
        "dense",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("cover 2 : {}"));
    let o = gsite(&["meet", &fixture("arrow.cat"), "--kind", "discrete"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sieve_verbs() {
    let o = gsite(&["pullback", &fixture("d12.cat"), "--arrow", "2->4", "--sieve", "{1->4}"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2->4*({1->4}) = {1->2}\n");
    let o = gsite(&[
        "initial-topology",
        &fixture("d12.cat"),
        "--object",
        "2",
        "--arrow",
        "2->4",
        "--kind",
        "dense",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("2: {{1->2}, {1->2, id_2}}"));
}

#[test]
fn seeds_reproduce_reports() {
    let run = |seed: &str| stdout(&gsite(&["validate", &fixture("z2.cat"), "--seed", seed]));
    assert_eq!(run("11"), run("11"));
}
