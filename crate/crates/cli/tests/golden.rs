//! Golden-file regression tests for the `bsato` binary.
//!
//! Each case runs the binary with `--json`, drops `wall_time_ms`, and compares
//! against `tests/golden/<case>.json`. Set `BSATO_BLESS=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bsato"))
        .args(args)
        .current_dir(crate_dir().join("tests"))
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn stable_json(stdout: &str) -> Value {
    let mut v: Value = serde_json::from_str(stdout).expect("json output");
    v.as_object_mut().expect("object").remove("wall_time_ms");
    v
}

fn golden(case: &str, args: &[&str], want_code: i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, stderr) = run(&full);
    assert_eq!(code, want_code, "{case}: exit code, stderr: {stderr}");
    let got = stable_json(&stdout);
    let path = crate_dir().join("tests/golden").join(format!("{case}.json"));
    if std::env::var_os("BSATO_BLESS").is_some() {
        let text = serde_json::to_string_pretty(&got).unwrap() + "\n";
        std::fs::write(&path, text).unwrap();
        return;
    }
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with BSATO_BLESS=1 to create)", path.display()));
    let want: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(got, want, "{case}: output differs from {}", path.display());
}

#[test]
fn bfun_minors_verified() {
    golden(
        "bfun_minors_3_2",
        &[
            "bfun",
            "minors",
            "--m",
            "3",
            "--n",
            "2",
            "--verify",
            "--renormalize",
        ],
        0,
    );
}

#[test]
fn bfun_square_minors() {
    golden("bfun_minors_3_3", &["bfun", "minors", "--n", "3", "--verify"], 0);
}

#[test]
fn bfun_pfaffian() {
    golden("bfun_pfaffian_1", &["bfun", "pfaffian", "--n", "1"], 0);
    golden(
        "bfun_pfaffian_2",
        &["bfun", "pfaffian", "--n", "2", "--verify", "--renormalize"],
        0,
    );
}

#[test]
fn verify_cayley() {
    golden(
        "verify_cayley_3_3",
        &[
            "verify",
            "cayley",
            "--kind",
            "minors",
            "--m",
            "3",
            "--n",
            "3",
            "--max-power",
            "3",
        ],
        0,
    );
    golden(
        "verify_cayley_skew5",
        &["verify", "cayley", "--kind", "pfaffian", "--n", "2"],
        0,
    );
}

#[test]
fn verify_capelli_display() {
    golden("verify_capelli_r2", &["verify", "capelli", "--r", "2"], 0);
}

#[test]
fn verify_named_suites() {
    golden(
        "verify_capelli_ddual_3_2",
        &["verify", "capelli-ddual", "--m", "3", "--n", "2"],
        0,
    );
    golden(
        "verify_fourier_skew5",
        &["verify", "fourier", "--kind", "pfaffian", "--n", "2"],
        0,
    );
    golden("verify_lemma_fsr", &["verify", "lemma-fsr", "--r", "4"], 0);
    golden(
        "verify_eigen_hwv_3_2",
        &["verify", "eigen-hwv", "--m", "3", "--n", "2", "--max-size", "2"],
        0,
    );
    golden(
        "verify_plucker_4_2",
        &["verify", "plucker", "--m", "4", "--n", "2"],
        0,
    );
    golden(
        "verify_localization_skew5",
        &["verify", "localization", "--kind", "pfaffian", "--n", "2"],
        0,
    );
    golden(
        "verify_several_variables_3_2",
        &[
            "verify",
            "several-variables",
            "--m",
            "3",
            "--n",
            "2",
            "--max-size",
            "2",
        ],
        0,
    );
    golden("verify_blowup", &["verify", "blowup", "--n", "2"], 0);
    golden(
        "verify_cauchy_skew7",
        &[
            "verify",
            "cauchy",
            "--kind",
            "pfaffian",
            "--n",
            "3",
            "--max-size",
            "3",
        ],
        0,
    );
    golden(
        "verify_recover_4_3",
        &["verify", "recover", "--m", "4", "--n", "3"],
        0,
    );
}

#[test]
fn verify_all_small() {
    golden("verify_all_2", &["verify", "all", "--max-size", "2"], 0);
}

#[test]
fn zeta_catalog() {
    golden(
        "zeta_minors_3_2",
        &["zeta", "minors", "--m", "3", "--n", "2", "--check-smc"],
        0,
    );
    golden(
        "zeta_pfaffian_3",
        &["zeta", "pfaffian", "--n", "3", "--check-smc"],
        0,
    );
}

#[test]
fn zeta_resolution_files() {
    golden(
        "zeta_resolution_minors_3_2",
        &[
            "zeta",
            "minors",
            "--m",
            "3",
            "--n",
            "2",
            "--check-smc",
            "--resolution",
            "fixtures/minors_3_2.json",
        ],
        0,
    );
    golden(
        "zeta_pole_outside_b",
        &[
            "zeta",
            "--check-smc",
            "--resolution",
            "fixtures/pole_outside_b.json",
        ],
        1,
    );
}

#[test]
fn failing_smc_prints_witness() {
    let (code, stdout, _) = run(&[
        "zeta",
        "--check-smc",
        "--resolution",
        "fixtures/pole_outside_b.json",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("fail smc/pole -7  [(s + 7)]"), "{stdout}");
}

#[test]
fn bad_usage_exits_2() {
    for args in [
        &["bfun", "minors", "--m", "2", "--n", "3"][..],
        &["bfun", "pfaffian"],
        &["verify", "plucker", "--kind", "pfaffian", "--n", "1"],
        &["verify", "several-variables", "--m", "4", "--n", "2"],
        &["verify", "no-such-suite"],
        &["zeta", "--check-smc"],
        &["zeta", "--resolution", "fixtures/missing.json"],
    ] {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 2, "{args:?}: {stderr}");
    }
}

#[test]
fn budget_exceeded_exits_3() {
    let (code, _, stderr) = run(&["--max-seconds", "0.001", "verify", "all", "--max-size", "4"]);
    assert_eq!(code, 3, "{stderr}");
    assert!(stderr.contains("budget"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "verify", "all", "--max-size", "2"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(stable_json(&a), stable_json(&b));
}

#[test]
fn thread_count_does_not_change_output() {
    let one = Command::new(env!("CARGO_BIN_EXE_bsato"))
        .args(["--json", "verify", "all", "--max-size", "2"])
        .env("BSATO_THREADS", "1")
        .output()
        .unwrap();
    let (_, many, _) = run(&["--json", "verify", "all", "--max-size", "2"]);
    assert!(one.status.success());
    assert_eq!(
        stable_json(&String::from_utf8(one.stdout).unwrap()),
        stable_json(&many)
    );
}

#[test]
fn text_output_lists_checks() {
    let (code, stdout, _) = run(&["bfun", "minors", "--m", "3", "--n", "2", "--verify"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("roots [-2,-3]"));
    assert!(stdout.contains("pass recover"));
    let (_, stdout, _) = run(&["verify", "capelli", "--r", "2"]);
    assert!(stdout.contains("C1 = E11 + E22"), "{stdout}");
}
