//! End-to-end runs of every subcommand against golden outputs in
//! `tests/golden/`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::{Command, Output};

use newspace::cli_io::{parse, Format, TableFixture, TableId};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newspace"))
        .args(args)
        .env_remove("NEWSPACE_CHECKPOINT_DIR")
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden {name}"));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&expected),
        "{args:?}"
    );
}

#[test]
fn dim_golden() {
    golden("dim_11_2_1.csv", &["dim", "--level", "11", "--weight", "2"]);
    golden(
        "dim_13_4_3.json",
        &[
            "--json", "dim", "--level", "13", "--weight", "4", "--conrey", "3",
        ],
    );
}

#[test]
fn dim_new_golden() {
    golden(
        "dim_new_25_3_7.csv",
        &[
            "dim-new",
            "--level",
            "25",
            "--weight",
            "3",
            "--conrey",
            "7",
            "--explain",
            "--oracle",
        ],
    );
    golden(
        "dim_new_37_2_1.csv",
        &["dim-new", "--level", "37", "--weight", "2"],
    );
}

#[test]
fn char_info_golden() {
    golden(
        "char_info_12_11.txt",
        &["char-info", "--level", "12", "--conrey", "11"],
    );
    golden(
        "char_info_5_4.json",
        &["--json", "char-info", "--level", "5", "--conrey", "4"],
    );
}

#[test]
fn classify_golden_and_matches_table() {
    golden(
        "classify_new_0_126.csv",
        &[
            "classify", "--space", "new", "--bound", "0", "--nmax", "126",
        ],
    );
    let out = run(&[
        "classify", "--space", "new", "--bound", "0", "--nmax", "126",
    ]);
    let got: Vec<(u64, u64, u64)> = parse(&out.stdout, Format::Csv)
        .unwrap()
        .iter()
        .map(|r| (r.level, r.weight, r.conrey))
        .collect();
    let mut table = TableFixture::load(TableId::T6_1).unwrap().rows;
    table.sort();
    let mut sorted = got.clone();
    sorted.sort();
    assert_eq!(sorted, table);
}

#[test]
fn classify_json_mirrors_csv() {
    let csv = run(&[
        "classify", "--space", "full", "--bound", "1", "--nmax", "40",
    ]);
    let json = run(&[
        "--json", "classify", "--space", "full", "--bound", "1", "--nmax", "40",
    ]);
    assert_eq!(
        parse(&csv.stdout, Format::Csv).unwrap(),
        parse(&json.stdout, Format::Json).unwrap()
    );
}

#[test]
fn verify_tables_golden() {
    golden(
        "verify_6_1.txt",
        &["verify-tables", "--table", "6.1", "--ceiling", "2000"],
    );
}

#[test]
fn martin_sieve_golden() {
    golden(
        "martin_100_20000.txt",
        &[
            "martin-sieve",
            "--target",
            "100",
            "--nmax",
            "20000",
            "--quiet",
        ],
    );
}

#[test]
fn martin_sieve_checkpoint_env() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_newspace"))
        .args([
            "martin-sieve",
            "--target",
            "50",
            "--nmax",
            "5000",
            "--chunk",
            "1000",
            "--quiet",
        ])
        .env("NEWSPACE_CHECKPOINT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 5);
}

#[test]
fn equidist_golden() {
    golden(
        "equidist_25_13.txt",
        &["equidist", "--level", "25", "--weight", "13"],
    );
    golden(
        "equidist_8_4.txt",
        &["equidist", "--level", "8", "--weight", "4"],
    );
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let args = [
        "classify", "--space", "full", "--bound", "0", "--nmax", "64",
    ];
    let stdout = run(&args).stdout;
    let mut with_out = vec!["--out", path.to_str().unwrap()];
    with_out.extend(args);
    assert!(run(&with_out).status.success());
    let first = std::fs::read(&path).unwrap();
    assert_eq!(first, stdout);
    assert!(run(&with_out).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dim", "--level", "12"]).status.code(), Some(2));
    assert_eq!(
        run(&["dim", "--level", "12", "--weight", "2", "--conrey", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["dim", "--level", "12", "--weight", "3", "--conrey", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "--space", "full", "--bound", "2", "--nmax", "30000"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["verify-tables", "--table", "9.9"]).status.code(),
        Some(2)
    );
}
