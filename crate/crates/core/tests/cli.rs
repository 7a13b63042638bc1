use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;

fn ptm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_prints_classic_prefix() {
    let out = ptm(&["gen", "--p", "2", "--length", "8", "--kind", "v"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0,1,1,0,1,0,0,1\n");
}

#[test]
fn negative_elements_parse() {
    let out = ptm(&["gen", "--p", "2", "--length", "4", "--elements", "-1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-1,1,1,-1\n");
}

#[test]
fn invalid_input_exits_nonzero() {
    for args in [
        &["gen", "--p", "3", "--length", "4", "--kind", "w"][..],
        &["gen", "--p", "40", "--length", "4"][..],
        &["partition", "--p", "2", "--M", "40"][..],
        &["sidelobe", "--p", "3", "--M", "1", "--elements", "1,2"][..],
        &["weights", "nonsense", "--p", "3"][..],
    ] {
        let out = ptm(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn csv_output_layout() {
    let out = ptm(&["--format", "csv", "partition", "--p", "3", "--M", "1"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,v_p,block");
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[6], "5,0,0");
    assert!(text.ends_with('\n'));

    let table = stdout(&ptm(&["--format", "csv", "weights", "table", "--p", "2"]));
    assert_eq!(table, "i,0,1\n0,1,1\n1,1,-1\n2,-1,1\n3,-1,-1\n");
    let bits = stdout(&ptm(&[
        "--format",
        "csv",
        "weights",
        "table",
        "--p",
        "2",
        "--as-bits",
    ]));
    assert_eq!(bits, "i,0,1\n0,0,0\n1,0,1\n2,1,0\n3,1,1\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "--format", "json", "weights", "verify", "--p", "4", "--seed", "3",
        ][..],
        &["--format", "json", "sidelobe", "--p", "3", "--M", "3"][..],
        &["recurrence", "--p", "3"][..],
    ] {
        let a = ptm(args);
        let b = ptm(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_envelope_and_reverification() {
    let out = ptm(&[
        "--format",
        "json",
        "sidelobe",
        "--p",
        "3",
        "--M",
        "2",
        "--elements",
        "0,1,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "sidelobe");
    assert_eq!(v["params"]["p"], 3);
    assert_eq!(v["pass"], true);

    let big = |x: &Value| x.as_str().unwrap().parse::<BigInt>().unwrap();
    let b0 = big(&v["results"]["b0"]);
    let mut all = true;
    for rec in v["results"]["records"].as_array().unwrap() {
        let recomputed = big(&rec["lhs"]) == big(&rec["n_m"]) * &b0;
        assert_eq!(recomputed, big(&rec["lhs"]) == big(&rec["rhs"]));
        assert_eq!(Value::Bool(recomputed), rec["equal"]);
        all &= recomputed;
    }
    assert_eq!(Value::Bool(all), v["pass"]);

    let out = ptm(&["--format", "json", "partition", "--p", "2", "--M", "3"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for row in v["results"]["power_sums"].as_array().unwrap() {
        let sums = row["block_sums"].as_array().unwrap();
        assert_eq!(
            Value::Bool(sums.iter().all(|s| *s == sums[0])),
            row["equal"]
        );
    }
}

#[test]
fn verify_report_documents_half_range_sum() {
    let out = ptm(&["--format", "json", "weights", "verify", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let half = &v["results"]["half_range_walsh_sum"];
    assert_eq!(half["nonzero"], serde_json::json!([[1, 4]]));
    assert!(half["note"].as_str().unwrap().contains("full range"));
    let names: Vec<&str> = v["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for expected in [
        "orthogonality",
        "antisymmetry",
        "walsh_sum_full_range",
        "richman_product",
    ] {
        assert!(names.contains(&expected));
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ptm-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("prefix.txt");
    let out = ptm(&["gen", "--length", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "0,1,1,0\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn raised_caps_warn() {
    let out = ptm(&["--max-p", "18", "gen", "--p", "18", "--length", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
