use std::process::{Command, Output};

fn cayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn prop1_transcript() {
    let out = cayley(&["prop1", "--group", "cyclic:6", "--set", "1,5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("prop1 certificate: cyclic:6 is Cayley on gendih:3 (|H| = 6)\n"));
    for check in ["automorphisms", "closure", "regular", "isomorphism"] {
        assert!(text.contains(&format!("check {check}: pass")), "{text}");
    }
}

#[test]
fn prop1_rejects_odd_order() {
    let out = cayley(&["prop1", "--group", "cyclic:5", "--set", "1,4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thm2_writes_a_checkable_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.json");
    let path = path.to_str().unwrap();
    let out = cayley(&["thm2", "--group", "gendih:4", "--set", "1,3,x:0", "--out", path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("is Cayley on abelian:4x2"));
    let check = cayley(&["thm2", "--check", path]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn thm2_invalid_witness_exits_1() {
    let out = cayley(&["thm2", "--group", "gendih:4", "--set", "1,3,x:0", "--witness", "x:1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a = 1"));
}

#[test]
fn thm2_without_witness_exits_1() {
    let out = cayley(&["thm2", "--group", "gendih:7", "--set", "x:0,x:1,x:3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn census_over_cap_exits_3() {
    let out = cayley(&["census", "--family", "prop1", "--group", "cyclic:18"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn sampled_census_is_reproducible() {
    let args = ["census", "--family", "thm2", "--group", "gendih:9", "--samples", "20", "--seed", "7"];
    let (a, b) = (cayley(&args), cayley(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 20);
    for line in stdout(&a).lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(row["group_spec"], "gendih:9");
        assert!(row.get("elapsed_ms").is_none());
    }
}

#[test]
fn census_over_order_range() {
    let out = cayley(&["census", "--family", "prop1", "--orders", "4..8", "--oracle", "--timings"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    // 4 + 8 + 16 inverse-closed sets in cyclic:4, cyclic:6, cyclic:8
    assert_eq!(rows.len(), 28);
    assert!(rows.iter().all(|r| r["certificate_ok"] == true && r["elapsed_ms"].is_u64()));
}

#[test]
fn aut_with_oracle() {
    let out = cayley(&["aut", "--group", "cyclic:6", "--set", "1,5", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("order 12\n"));
    assert!(text.contains("oracle: factorial search agrees"));
}

#[test]
fn regulars_transcript() {
    let out = cayley(&["regulars", "--group", "gendih:4", "--set", "1,3,x:0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("aut order 48\nregular subgroups 10\n"), "{text}");
    assert!(text.contains("class gendih:4 count 6"));
}

#[test]
fn export_formats() {
    let hexagon = ["build", "--group", "cyclic:6", "--set", "1,5"];
    assert_eq!(stdout(&cayley(&hexagon)), "EhEG\n");
    let dot = stdout(&cayley(&[&hexagon[..], &["--format", "dot"]].concat()));
    assert!(dot.starts_with("graph \"Cay(cyclic:6, {1,5})\" {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    let json: serde_json::Value = serde_json::from_str(&stdout(&cayley(&[&hexagon[..], &["--format", "json"]].concat()))).unwrap();
    assert_eq!(json["n"], 6);
    assert_eq!(json["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cayley(&["build", "--group", "bogus:1"]).status.code(), Some(2));
    assert_eq!(cayley(&["build", "--group", "cyclic:6", "--set", "0"]).status.code(), Some(2));
    assert_eq!(cayley(&["build", "--group", "cyclic:6", "--set", "1"]).status.code(), Some(2));
    assert_eq!(cayley(&["build"]).status.code(), Some(2));
    assert_eq!(cayley(&["frobnicate"]).status.code(), Some(2));
}
