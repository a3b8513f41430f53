use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_polylink");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("POLYLINK_SEED").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_and_classify_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "square.poly", "4\n0 0\n1 0\n1 1\n0 1\n");
    assert_eq!(stdout(&["validate", &sq]), "simple n=4\n");
    assert_eq!(stdout(&["classify", &sq, "1/2", "1/2"]), "interior\n");
    assert_eq!(stdout(&["classify", &sq, "-1/2", "1/2"]), "exterior\n");
    assert_eq!(stdout(&["classify", &sq, "1", "1"]), "boundary vertex 2\n");
    assert_eq!(stdout(&["classify", &sq, "1/2", "0"]), "boundary edge 1\n");
}

#[test]
fn visible_and_path() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "square.poly", "4\n0 0\n1 0\n1 1\n0 1\n");
    assert_eq!(stdout(&["visible", &sq, "1/2", "1/2"]), "vertices 0 1 2 3\npair 0 1\nnonadjacent 0 2\n");
    let out = stdout(&["path", &sq, "1/4", "1/4", "3/4", "1/2"]);
    assert_eq!(out, "links 1 case direct component interior bound 2\npath 1/4 1/4 3/4 1/2\n");
    let out = stdout(&["path", &sq, "1/4", "1/4", "3/4", "1/2", "--naive"]);
    assert!(out.starts_with("links "));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.poly", "3\n0 0\n1 0\n2 0\n");
    let o = run(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("overlap"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    let sq = write(dir.path(), "square.poly", "4\n0 0\n1 0\n1 1\n0 1\n");
    assert_eq!(run(&["classify", &sq, "x", "1"]).status.code(), Some(2));
    // Points in different components are a domain error.
    assert_eq!(run(&["linkdist", &sq, "1/2", "1/2", "2", "2"]).status.code(), Some(1));
    let o = Command::new(BIN).args(["poldiam", &sq, "--domain", "int"]).env("POLYLINK_SEED", "nope").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spiral_six_golden() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&["gen", "spiral", "6"]);
    assert_eq!(
        text,
        "6\n-10 0\n66 -1\n-1 66\n0 6\n1 62\n62 1\n# int-witness -5 0 0 7\n# ext-witness 2 60 3/2 257/4\n"
    );
    let file = write(dir.path(), "spiral6.poly", &text);
    assert_eq!(stdout(&["validate", &file]), "simple n=6\n");
    let out = stdout(&["linkdist", &file, "--domain", "int", "-5", "0", "0", "7"]);
    assert!(out.starts_with("3\nwitness -5 0 "), "{out}");
    let out = stdout(&["linkdist", &file, "--domain", "ext"]);
    assert!(out.starts_with("3\nwitness 2 60 "), "{out}");
}

#[test]
fn gen_writes_files_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("s7.poly");
    let svg = dir.path().join("s7.svg");
    let out = stdout(&["gen", "spiral", "7", "--out", poly.to_str().unwrap(), "--svg", svg.to_str().unwrap(), "--verify"]);
    assert_eq!(out, "# verify int 3/3 ext 4/4 pass\n");
    assert!(std::fs::read_to_string(&poly).unwrap().starts_with("7\n"));
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches("<circle").count(), 4);
}

#[test]
fn seeded_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "l.poly", "6\n0 0\n2 0\n2 1\n1 1\n1 2\n0 2\n");
    let args = ["poldiam", &l, "--domain", "ext", "--budget", "6"];
    assert_eq!(stdout(&args), stdout(&args));
    let seeded = |s: &str| {
        let o = Command::new(BIN).args(args).env("POLYLINK_SEED", s).output().unwrap();
        String::from_utf8(o.stdout).unwrap()
    };
    assert_eq!(seeded("0"), stdout(&args));
    assert_eq!(seeded("5"), seeded("5"));
    let flag = stdout(&["--seed", "5", "poldiam", &l, "--domain", "ext", "--budget", "6"]);
    assert_eq!(flag, seeded("5"));
}
