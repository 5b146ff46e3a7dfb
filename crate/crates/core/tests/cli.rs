use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const CATALAN: &str = r#"{"kind":"named","name":"catalan"}"#;
const HERMITE: &str = r#"{"kind":"named","name":"hermite"}"#;
const LINEAR: &str = r#"{"kind":"window","lo":0,"values":["1","2","3","4","5","6","7","8","9","10"]}"#;

fn tauq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tauq")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    p.to_str().unwrap().to_string()
}

#[test]
fn every_subcommand_runs() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["tau", "gl2", "--moments", CATALAN, "--k", "0..3"],
        vec![
            "tau",
            "gl3",
            "--moments-c",
            CATALAN,
            "--moments-d",
            LINEAR,
            "--k",
            "2",
            "--l",
            "0..2",
        ],
        vec!["verify", "qsystem", "--moments", HERMITE, "--k", "0..4"],
        vec![
            "verify",
            "gl3",
            "--moments-c",
            CATALAN,
            "--moments-d",
            LINEAR,
            "--k",
            "0..2",
            "--l",
            "0..2",
        ],
        vec![
            "verify",
            "zero-curvature",
            "--moments",
            CATALAN,
            "--k",
            "0..2",
            "--alpha",
            "1",
        ],
        vec!["verify", "orthogonality", "--moments", HERMITE, "--k", "5"],
        vec![
            "verify",
            "mop",
            "--moments-c",
            CATALAN,
            "--moments-d",
            LINEAR,
            "--k",
            "0..2",
            "--l",
            "0..2",
        ],
        vec!["opgen", "--moments", CATALAN, "--count", "2"],
        vec![
            "mop",
            "--moments-c",
            CATALAN,
            "--moments-d",
            LINEAR,
            "--k",
            "2",
            "--l",
            "1",
        ],
        vec!["recurrence", "--moments", CATALAN, "--k", "0..3"],
    ];
    for args in cases {
        let out = tauq(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "tauq {}: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn verify_json_shape() {
    let out = tauq(&[
        "verify",
        "qsystem",
        "--moments",
        CATALAN,
        "--k",
        "0..6",
        "--alpha",
        "0..2",
        "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["summary"]["total"], 21);
    assert_eq!(v["summary"]["pass"], 21);
    let first = &v["checks"][0];
    assert_eq!(first["identity"], "qsystem");
    assert_eq!(first["instance"]["k"], 0);
    assert_eq!(first["pass"], true);
}

#[test]
fn gl3_tables() {
    let out = tauq(&[
        "tau",
        "gl3",
        "--moments-c",
        CATALAN,
        "--moments-d",
        LINEAR,
        "--k",
        "2",
        "--l",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&out), "k,alpha,l,beta,value\n2,0,1,0,1\n");
    // with E != 0 the residue formula is used, and C needs finite support
    let e = r#"{"kind":"window","lo":0,"values":["1","-1"]}"#;
    let gl3 = |c: &str| {
        tauq(&[
            "tau",
            "gl3",
            "--moments-c",
            c,
            "--moments-d",
            LINEAR,
            "--moments-e",
            e,
            "--k",
            "1",
            "--l",
            "1",
            "--format",
            "json",
        ])
    };
    let out = gl3(LINEAR);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["entries"][0]["value"].is_string());
    let out = gl3(CATALAN);
    assert_eq!(out.status.code(), Some(2));
    let record: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(record["error"], "precondition");
}

#[test]
fn symbolic_gl3_needs_no_moments() {
    let out = tauq(&["tau", "gl3", "--mode", "symbolic", "--k", "1", "--l", "1"]);
    assert_eq!(stdout(&out), "tau_{1,1}^(0,0) = -d_0\n");
}

#[test]
fn moments_from_file() {
    let dir = std::env::temp_dir().join(format!("tauq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hermite.json");
    std::fs::write(&path, HERMITE).unwrap();
    let out = tauq(&["opgen", "--moments", path.to_str().unwrap(), "--count", "2"]);
    assert_eq!(stdout(&out), "p_1 = z\np_2 = z^2 - 1/2\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    let malformed = tauq(&["tau", "gl2", "--moments", &fixture("malformed.json"), "--k", "1"]);
    assert_eq!(malformed.status.code(), Some(2));
    let zeros = tauq(&[
        "tau",
        "gl2",
        "--method",
        "recurrence",
        "--moments",
        &fixture("zeros.json"),
        "--k",
        "3",
    ]);
    assert_eq!(zeros.status.code(), Some(3));
    let record: Value = serde_json::from_slice(&zeros.stderr).unwrap();
    assert_eq!(record["error"], "degenerate");
    assert_eq!(record["index"]["alpha"], 2);
    let empty_range = tauq(&["tau", "gl2", "--moments", CATALAN, "--k", "3..1"]);
    assert_eq!(empty_range.status.code(), Some(2));
    let residue_limit = tauq(&["tau", "gl2", "--moments", CATALAN, "--k", "6", "--method", "residue"]);
    assert_eq!(residue_limit.status.code(), Some(2));
    let raised = tauq(&[
        "tau",
        "gl2",
        "--moments",
        CATALAN,
        "--k",
        "6",
        "--method",
        "residue",
        "--max-work",
        "6",
    ]);
    assert_eq!(stdout(&raised), "tau_6^(0) = 1\n");
    let help = tauq(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}
