use std::process::{Command, Output};

use canonical_core::homext::hom_ext;
use canonical_core::io::parse_rep;
use canonical_core::Rep;
use tempfile::TempDir;

fn canon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canon"))
        .args(args)
        .env_remove("CANON_WORKERS")
        .output()
        .expect("spawn canon")
}

fn load(p: &str) -> Rep {
    parse_rep(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

/// Writes X = S_1^[2] on arm 3 and Y = the rank-one module O(0).
fn write_pair(dir: &TempDir) -> (String, String) {
    let (x, y) = (path(dir, "x.json"), path(dir, "y.json"));
    let out = canon(&[
        "module", "regular", "--p", "2,3,7", "--arm", "3", "--a", "1", "--l", "2", "--out", &x,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = canon(&[
        "module", "rank1", "--p", "2,3,7", "--r", "0,0,0", "--n", "1", "--out", &y,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    (x, y)
}

#[test]
fn module_writes_a_parsable_file() {
    let dir = TempDir::new().unwrap();
    let (x, y) = write_pair(&dir);
    for p in [&x, &y] {
        let rep = load(p);
        assert!(rep.check_relations().is_ok());
    }
}

#[test]
fn ext_matches_library() {
    let dir = TempDir::new().unwrap();
    let (x, y) = write_pair(&dir);
    for (a, b) in [(&x, &y), (&y, &x), (&x, &x)] {
        let out = canon(&["ext", "--x", a, "--y", b]);
        assert_eq!(code(&out), 0);
        let (h, e) = hom_ext(&load(a), &load(b)).unwrap();
        assert_eq!(stdout(&out).trim(), format!("hom={h} ext={e}"));
    }
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (x, y) = write_pair(&dir);
    let runs: Vec<Vec<u8>> = ["m1.json", "m2.json"]
        .iter()
        .map(|name| {
            let m = path(&dir, name);
            let workers = if *name == "m1.json" { "1" } else { "4" };
            let out = Command::new(env!("CARGO_BIN_EXE_canon"))
                .args(["schofield", "--x", &x, "--y", &y, "--out", &m])
                .env("CANON_WORKERS", workers)
                .output()
                .unwrap();
            assert_eq!(code(&out), 0, "{}", stdout(&out));
            std::fs::read(&m).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);

    let a = canon(&["kron", "--n", "3", "--k", "3", "--emit", "latex"]);
    let b = canon(&["kron", "--n", "3", "--k", "3", "--emit", "latex"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("pmatrix"));
}

#[test]
fn schofield_step_audits_clean() {
    let dir = TempDir::new().unwrap();
    let (x, y) = write_pair(&dir);
    let m = path(&dir, "m.json");
    let out = canon(&["schofield", "--x", &x, "--y", &y, "--out", &m]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("FAIL"));
    let out = canon(&["audit", "--m", &m]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("exceptional=true"));
}

#[test]
fn verification_failures_exit_one() {
    let dir = TempDir::new().unwrap();
    let (x, y) = write_pair(&dir);

    let out = canon(&["schofield", "--x", &y, "--y", &y]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));

    let m = path(&dir, "m.json");
    assert_eq!(
        code(&canon(&["schofield", "--x", &x, "--y", &y, "--out", &m])),
        0
    );
    let text = std::fs::read_to_string(&m).unwrap();
    let bad = text.replacen("\"1\"", "\"7/3\"", 1);
    let bad_path = path(&dir, "bad.json");
    std::fs::write(&bad_path, bad).unwrap();
    let out = canon(&["audit", "--m", &bad_path]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL coefficients"));
}

#[test]
fn invalid_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let broken = path(&dir, "broken.json");
    std::fs::write(&broken, "{ \"algebra\": ").unwrap();
    let out = canon(&["audit", "--m", &broken]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    assert_eq!(code(&canon(&["algebra", "--p", "2,3,1"])), 2);
    assert_eq!(code(&canon(&["kron", "--n", "1", "--k", "4"])), 2);
    assert_eq!(
        code(&canon(&[
            "ext",
            "--x",
            &path(&dir, "missing.json"),
            "--y",
            &broken
        ])),
        2
    );

    let out = Command::new(env!("CARGO_BIN_EXE_canon"))
        .args(["algebra", "--p", "2,3,7"])
        .env("CANON_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_suite_passes() {
    let out = canon(&["verify-suite", "--p", "2,3,7"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}
