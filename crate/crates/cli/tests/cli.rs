use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbent"))
        .args(args)
        .output()
        .expect("spawn cbent")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn check_examples_and_exit_codes() {
    let o = run(&[
        "check", "--field", "2^3", "--fn", "x^3+x^5", "--c", "0", "--pred", "perfect2", "--expect",
        "true",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["schema"], 1);
    assert_eq!(rows[0]["verdict"], true);

    let o = run(&[
        "check",
        "--field",
        "2^3",
        "--fn",
        "x",
        "--c",
        "1",
        "--pred",
        "strict-perfect1",
    ]);
    assert_eq!(json_lines(&o)[0]["verdict"], false);
    let o = run(&[
        "check",
        "--field",
        "2^3",
        "--fn",
        "x",
        "--c",
        "1",
        "--pred",
        "strict-perfect1",
        "--expect",
        "true",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["check", "--field", "2^3", "--fn", "x^"],
        vec!["check", "--field", "4^2", "--fn", "x"],
        vec!["check", "--field", "2^3", "--fn", "x", "--pred", "bent3"],
        vec!["check", "--field", "2^3", "--fn", "x", "--c", "subfield:2"],
        vec![
            "check", "--field", "2^3", "--fn", "x", "--c", "1", "--pred", "bent1", "--method",
            "balance",
        ],
        vec![
            "check", "--field", "2^3", "--fn", "x", "--family", "gold:k=1",
        ],
        vec!["verify", "nonsense"],
        vec!["scan-monomials", "--field", "2^3", "--d", "1..9"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn bent_at_c_one_carries_a_caveat() {
    let o = run(&[
        "check",
        "--field",
        "2^3",
        "--fn",
        "x^3",
        "--c",
        "1",
        "--pred",
        "bent1,perfect1",
    ]);
    let rows = json_lines(&o);
    assert!(rows[0]["caveat"].is_string());
    assert!(rows[1].get("caveat").is_none());
}

#[test]
fn csv_header_mirrors_json_keys() {
    let o = run(&[
        "check", "--field", "3^2", "--fn", "x^2", "--c", "all", "--format", "csv", "--pred", "pcn",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "schema,predicate,c,verdict,witness,method,elapsed_ms,caveat"
    );
    assert_eq!(lines.count(), 9);
}

#[test]
fn deterministic_output_ignores_worker_count() {
    let base = [
        "check",
        "--field",
        "3^3",
        "--fn",
        "x^5 + g*x^2",
        "--c",
        "all",
        "--deterministic",
    ];
    let a = run(&[&["--workers", "1"][..], &base[..]].concat());
    let b = run(&[&["--workers", "4"][..], &base[..]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_lines(&a).len(), 8 * 27);

    let scan = ["scan-monomials", "--field", "3^3", "--c", "all-but-1"];
    let a = run(&[&["--workers", "1"][..], &scan[..]].concat());
    let b = run(&[&["--workers", "3"][..], &scan[..]].concat());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_monomials_rows() {
    let o = run(&["scan-monomials", "--field", "3^3", "--d", "2"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row, ["1", "3^3", "2", "0", "2", "2", "false"]);

    let o = run(&["scan-monomials", "--field", "2^3", "--d", "4..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = run(&[
        "scan-monomials",
        "--field",
        "2^3",
        "--d",
        "1..6",
        "--format",
        "json",
    ]);
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["gcd"] == 1 && r["bent1"] == true));
}

#[test]
fn subfield_c_set_and_codomain() {
    let o = run(&[
        "check",
        "--field",
        "2^6",
        "--family",
        "do_trace:k=2,a=g^21",
        "--c",
        "subfield:2",
        "--pred",
        "pcn",
    ]);
    let rows = json_lines(&o);
    let verdicts: Vec<(u64, bool)> = rows
        .iter()
        .map(|r| (r["c"].as_u64().unwrap(), r["verdict"].as_bool().unwrap()))
        .collect();
    assert_eq!(verdicts.len(), 4);
    assert!(verdicts.iter().all(|&(c, v)| v == (c != 1)));

    let o = run(&[
        "check", "--field", "2^4", "--fn", "x^3", "--cod", "2^2", "--c", "all", "--pred",
        "perfect1",
    ]);
    assert_eq!(json_lines(&o).len(), 4);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "equiv1", "--field", "2^3", "--seed", "7"],
        vec![
            "verify", "equiv2", "--field", "3^2", "--cod", "3^1", "--seed", "7",
        ],
        vec!["verify", "mm", "--m", "2"],
        vec!["verify", "lemma2", "--field", "3^2", "--seed", "1"],
        vec!["verify", "lemma1", "--field", "2^3", "--cod", "2^1"],
        vec!["verify", "gold"],
        vec!["verify", "do", "--field", "2^3"],
        vec!["verify", "profiles", "--field", "2^2", "--count", "5"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
}

#[test]
fn spectrum_trivial_cases() {
    let o = run(&[
        "spectrum", "--field", "2^3", "--fn", "0", "--kind", "walsh1",
    ]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "walsh1");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 64);
    for r in rows.iter().filter(|r| r["a"] == 0) {
        assert_eq!(r["approx"][0], 8.0);
    }

    let o = run(&[
        "spectrum", "--field", "2^3", "--fn", "x", "--kind", "walsh1",
    ]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    for r in v["rows"].as_array().unwrap() {
        let expected = if r["a"] == r["b"] { 8.0 } else { 0.0 };
        assert_eq!(r["approx"][0], expected, "{r}");
    }

    let o = run(&[
        "spectrum", "--field", "2^3", "--fn", "x^3", "--kind", "walsh2", "--format", "csv",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1).unwrap(), "0,0 0 0 0,0.0,0.0");
}

#[test]
fn family_table_round_trip() {
    let dir = std::env::temp_dir().join(format!("cbent-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = dir.join("gold.txt");
    let o = run(&[
        "--out",
        table.to_str().unwrap(),
        "family",
        "--field",
        "2^5",
        "--family",
        "gold:k=1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&table)
        .unwrap()
        .starts_with("2 5 5"));

    let via_table = run(&[
        "check",
        "--table",
        table.to_str().unwrap(),
        "--c",
        "0,2",
        "--deterministic",
    ]);
    let via_fn = run(&[
        "check",
        "--field",
        "2^5",
        "--fn",
        "x^3",
        "--c",
        "0,2",
        "--deterministic",
    ]);
    assert_eq!(via_table.status.code(), Some(0));
    assert_eq!(via_table.stdout, via_fn.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ddt_dump() {
    let o = run(&["ddt", "--field", "2^3", "--fn", "x^3", "--c", "1"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["delta"], 2);
    assert_eq!(v["rows"][0][0], 8);
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
}
