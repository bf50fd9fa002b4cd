//! End-to-end tests of the command-line surface: subcommands, exit codes,
//! output stability across thread counts, group description files and the
//! table cache.

use std::process::Command;

fn run(args: &[&str], envs: &[(&str, &str)]) -> (String, String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quasilog"));
    cmd.args(args);
    cmd.env_remove("QUASILOG_CACHE_DIR");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn group_subcommand() {
    let (stdout, _, code) = run(&["group", "G3_1_2"], &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("order: 18"));
    assert!(stdout.contains("hyperplanes: 5"));
    // family letter plus flags
    let (stdout, _, code) = run(&["group", "I2", "--k", "6"], &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("order: 12"));
    assert!(stdout.contains("orbit_1: size 3"));
    let (stdout, _, code) = run(&["group", "B", "--rank", "2"], &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("order: 8"));
}

#[test]
fn group_from_file_and_cache() {
    let dir = tempfile_dir();
    let file = dir.join("custom.group");
    std::fs::write(
        &file,
        "family custom\nlabel b2exp\nconductor 2\ngenerator 0, 1; 1, 0\ngenerator -1, 0; 0, 1\n",
    )
    .unwrap();
    let (stdout, _, code) = run(&["group", file.to_str().unwrap()], &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("order: 8"));
    // the cache directory is honored for family tags
    let cache = dir.join("cache");
    let (first, _, code) = run(
        &["group", "B2"],
        &[("QUASILOG_CACHE_DIR", cache.to_str().unwrap())],
    );
    assert_eq!(code, 0);
    assert!(cache.join("B2.table").exists());
    let (second, _, _) = run(
        &["group", "B2"],
        &[("QUASILOG_CACHE_DIR", cache.to_str().unwrap())],
    );
    assert_eq!(first, second);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn quasi_dimension_table() {
    let (stdout, _, code) = run(
        &["quasi", "G3_1_2", "--m", "1", "--cutoff", "10", "--isotypic"],
        &[],
    );
    assert_eq!(code, 0);
    // first nonzero slice at degree 7, two generators there and at 10
    for d in 0..7 {
        assert!(stdout.contains(&format!("dim_{}: 0", d)), "degree {}", d);
    }
    assert!(stdout.contains("dim_7: 2"));
    // zero multiplicity gives the full polynomial dimensions
    let (stdout, _, code) = run(&["quasi", "B2", "--m", "0", "--cutoff", "4"], &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("dim_4: 5"));
}

#[test]
fn free_subcommand_and_exit_codes() {
    let (stdout, _, code) = run(&["free", "G3_1_2", "--m", "1", "--module", "dm"], &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("exponents: 7,10"));
    assert!(stdout.contains("verdict: PASS"));
    // the failing fixture exits nonzero and reports the leftover factor
    let (stdout, _, code) = run(&["free", "fixture-deconing", "--module", "cone"], &[]);
    assert_eq!(code, 1);
    assert!(stdout.contains("verdict: FAIL"));
    assert!(stdout.contains("residual: x3"));
    // coned Catalan pipeline
    let (stdout, _, code) = run(
        &["free", "B2", "--m", "2,1", "--module", "ccat", "--cutoff", "9"],
        &[],
    );
    // orbit order may place the coordinate orbit second; accept either by
    // checking only the certified exponents
    assert_eq!(code, 0, "stdout: {}", stdout);
    assert!(stdout.contains("exponents: 1,7,9"));
}

#[test]
fn reproduce_subcommand() {
    let (stdout, _, code) = run(&["reproduce", "ex-i26"], &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("PASS: ex-i26 overall"));
    let (_, stderr, code) = run(&["reproduce", "ex-nope"], &[]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown example id"));
}

#[test]
fn output_is_stable_across_thread_counts() {
    let a = run(
        &["--format", "structured", "--threads", "1", "quasi", "G3_1_2", "--m", "1", "--cutoff", "8"],
        &[],
    );
    let b = run(
        &["--format", "structured", "--threads", "4", "quasi", "G3_1_2", "--m", "1", "--cutoff", "8"],
        &[],
    );
    assert_eq!(a.2, 0);
    assert_eq!(a.0, b.0, "structured output must be byte-identical");
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("quasilog-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
