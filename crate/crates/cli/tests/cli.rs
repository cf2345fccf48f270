use std::path::PathBuf;
use std::process::Command;

use scorza_cli::{run, Output, EXIT_INPUT, EXIT_OK, SELECTOR_GRAMMAR};

fn scorza(args: &[&str]) -> Output {
    run(std::iter::once("scorza").chain(args.iter().copied()))
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/catalog").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn catalog_matches_golden_files_byte_for_byte() {
    for k in 2..=6 {
        let out = scorza(&["catalog", "--k", &k.to_string()]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.stdout, golden(&format!("scorza_k{k}.json")), "k = {k}");
    }
    for r in 1..=6 {
        let out = scorza(&["catalog", "--rank", &r.to_string()]);
        assert_eq!(out.stdout, golden(&format!("hermitian_r{r}.json")), "r = {r}");
    }
}

#[test]
fn catalog_table_lists_the_severi_rows() {
    let out = scorza(&["catalog", "--k", "2", "--format", "table"]);
    assert_eq!(out.code, EXIT_OK);
    for (n, m) in [(2, 5), (4, 8), (8, 14), (16, 26)] {
        assert!(
            out.stdout.lines().any(|l| l.contains("true") && l.split_whitespace().any(|w| w == n.to_string())
                && l.split_whitespace().any(|w| w == m.to_string())),
            "missing ({n}, {m})"
        );
    }
    assert!(out.stdout.contains("false"), "non-regular rows");
    let reg = scorza(&["catalog", "--rank", "3", "--regular-only"]);
    assert!(reg.stdout.contains("e7(-25)") && !reg.stdout.contains("su(p,3)"));
}

#[test]
fn dim_of_the_cayley_plane() {
    let out = scorza(&["dim", "--model", "exc27", "--stratum", "1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "{\"cone_dim\":17,\"proj_dim\":16}\n");
}

#[test]
fn input_errors_exit_with_2() {
    let cases: &[&[&str]] = &[
        &["verify", "--suite", "all", "--trials", "0"],
        &["verify", "--suite", "nonsense"],
        &["dim", "--model", "sym", "--stratum", "1"],
        &["dim", "--model", "exc27", "--stratum", "4"],
        &["reduce", "--case", "ostar:1"],
        &["reduce", "--case", "sp:3", "--s", "0"],
        &["sample", "--model", "mat:3,3", "--rank", "4"],
        &["defects", "--model", "sym:1"],
        &["catalog", "--k", "1"],
        &["catalog"],
        &["invariant"],
        &["invariant", "--model", "mat:3,5"],
        &["frobnicate"],
        &["dim", "--model", "exc27", "--stratum", "1", "--format", "xml"],
    ];
    for args in cases {
        let out = scorza(args);
        assert_eq!(out.code, EXIT_INPUT, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = scorza(&["sample", "--model", "sym3"]);
    assert!(out.stderr.contains(SELECTOR_GRAMMAR), "{}", out.stderr);
    let out = scorza(&["reduce", "--case", "so:3"]);
    assert!(out.stderr.contains(SELECTOR_GRAMMAR), "{}", out.stderr);
}

#[test]
fn outputs_are_deterministic_per_seed() {
    let cmds: &[&[&str]] = &[
        &["sample", "--model", "exc27", "--rank", "2", "--seed", "17"],
        &["sample", "--model", "skew:7", "--rank", "3", "--seed", "17"],
        &["reduce", "--case", "ostar:6", "--s", "2", "--seed", "17"],
        &["defects", "--model", "mat:3,4", "--seed", "17"],
        &["invariant", "--model", "sym:3", "--seed", "17"],
        &["verify", "--suite", "composition", "--trials", "5", "--seed", "17"],
    ];
    for args in cmds {
        let a = scorza(args);
        let b = scorza(args);
        assert_eq!(a.code, EXIT_OK, "{args:?}: {}", a.stderr);
        assert_eq!(a, b, "{args:?}");
        assert!(a.stdout.ends_with('\n') && !a.stdout.trim_end().contains('\n'), "one compact JSON line");
    }
    let s1 = scorza(&["sample", "--model", "sym:4", "--rank", "2", "--seed", "1"]);
    let s2 = scorza(&["sample", "--model", "sym:4", "--rank", "2", "--seed", "2"]);
    assert_ne!(s1.stdout, s2.stdout);
}

#[test]
fn reduce_emits_the_documented_fields() {
    let out = scorza(&["reduce", "--case", "u:3,3", "--s", "4", "--seed", "3"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in ["alpha", "mu_K", "mu_G", "reduced_point", "rank"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["rank"], 3);
    assert_eq!(v["reduced_point"]["model"]["kind"], "mat");
}

#[test]
fn invariant_reads_a_sampled_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pt.json");
    let path_s = path.to_str().unwrap();
    let out = scorza(&["sample", "--model", "mat:3,3", "--rank", "2", "--seed", "4", "--out", path_s]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    let inv = scorza(&["invariant", "--input", path_s]);
    assert_eq!(inv.code, EXIT_OK, "{}", inv.stderr);
    let v: serde_json::Value = serde_json::from_str(&inv.stdout).unwrap();
    assert_eq!(v["invariant"]["re"], "0/1");
    assert_eq!(v["point"]["rank"], 2);
    let full = scorza(&["invariant", "--model", "mat:3,3", "--seed", "4"]);
    let v: serde_json::Value = serde_json::from_str(&full.stdout).unwrap();
    assert_ne!(v["invariant"]["re"], "0/1");
    std::fs::write(&path, "{\"model\":{\"kind\":\"sym\",\"r\":2},\"coords\":[[\"1\"]]}").unwrap();
    assert_eq!(scorza(&["invariant", "--input", path_s]).code, EXIT_INPUT);
}

#[test]
fn binary_honours_env_seed_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_scorza");
    let run_bin = |args: &[&str], seed: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args);
        match seed {
            Some(s) => c.env("SCORZA_SEED", s),
            None => c.env_remove("SCORZA_SEED"),
        };
        c.output().unwrap()
    };
    let a = run_bin(&["sample", "--model", "exc27"], Some("123"));
    let b = run_bin(&["sample", "--model", "exc27", "--seed", "123"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run_bin(&["sample", "--model", "exc27"], None);
    let d = run_bin(&["sample", "--model", "exc27", "--seed", "0"], None);
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(run_bin(&["verify", "--suite", "all", "--trials", "0"], None).status.code(), Some(2));
    assert_eq!(run_bin(&["dim", "--model", "nope", "--stratum", "1"], None).status.code(), Some(2));
}
