use std::process::{Command, Output};

fn ccc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccc"))
        .args(args)
        .env_remove("CCC_COSET_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dihedral_scan_flags_equality_at_three_values() {
    let o = ccc(&["scan", "--family", "dihedral", "--m", "3..40", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "family");
    assert_eq!(&headers[16], "discrepancy_notes");
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 38);
    let equal: Vec<&str> = rows
        .iter()
        .filter(|r| r[8].contains("equality"))
        .map(|r| &r[1])
        .collect();
    assert_eq!(equal, ["3", "4", "6"]);
    assert!(rows.iter().all(|r| &r[14] == "true" && &r[15] == "true"));
}

#[test]
fn counterexample_graph_exits_two_and_decomposition_form_is_rejected() {
    let o = ccc(&["report", "--graph", "star:5+K:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["m1"], "42");
    assert_eq!(v["report"]["m2"], "37");
    assert_eq!(v["report"]["num_vertices"], "9");
    assert_eq!(v["report"]["num_edges"], "8");
    assert_eq!(v["report"]["verdict"], "violated");
    assert!(String::from_utf8_lossy(&o.stderr).contains("failures"));

    let o = ccc(&["report", "--decomposition", "K1,5-star-union-K3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn props_of_frobenius_21() {
    let o = ccc(&["props", "--aux", "frobenius:7,3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["commuting_probability"], "5/21");
    assert_eq!(v["frobenius"], serde_json::json!([7, 3]));
    assert_eq!(v["classes"], 5);
}

#[test]
fn verify_semidihedral_24_as_json() {
    let o = ccc(&["verify", "--family", "semidihedral:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["structure_match"], true);
    assert_eq!(v[0]["equality_as_predicted"], true);
    assert_eq!(v[0]["verdict"], "equality");
}

#[test]
fn table_report_for_d10() {
    let o = ccc(&["report", "--family", "dihedral:5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!((row[4], row[5], row[8]), ("2", "1", "strict"));
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = ["scan", "--family", "unm", "--n", "2..3", "--m", "3..12", "--format", "csv"];
    let one = ccc(&[&args[..], &["--jobs", "1"]].concat());
    let many = ccc(&[&args[..], &["--jobs", "6"]].concat());
    let again = ccc(&[&args[..], &["--jobs", "6"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(many.stdout, again.stdout);
}

#[test]
fn closed_only_scan_handles_large_parameters() {
    let o = ccc(&["scan", "--family", "dihedral", "--m", "999990..1000000", "--closed-only"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().skip(1).all(|l| l.contains(",strict,")));
}

#[test]
fn quotient_case_scan_skips_non_integral_x() {
    let o = ccc(&["scan", "--case", "elem-abelian", "--p", "3", "--x", "1..6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // x = 3, 6 only.
    assert_eq!(text.lines().count(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
}

#[test]
fn gpmn_mismatch_exits_two() {
    let o = ccc(&["scan", "--family", "gpmn", "--p", "2", "--m", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains(",false,"));
}

#[test]
fn group_json_round_trip_through_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q16.json");
    let p = path.to_str().unwrap();
    let o = ccc(&["family", "--family", "dicyclic:4", "--dump", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order          16"));
    let from_json = ccc(&["report", "--group-json", p, "--format", "csv"]);
    let direct = ccc(&["report", "--family", "dicyclic:4", "--format", "csv"]);
    let strip = |o: &Output| stdout(o).lines().nth(1).unwrap().split_once(',').unwrap().1.split_once(',').unwrap().1.to_string();
    assert_eq!(strip(&from_json), strip(&direct));
}

#[test]
fn dot_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d8.dot");
    let o = ccc(&["ccc", "--family", "dihedral:4", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph \"CCC(D8)\" {"));
    assert_eq!(dot.matches(" -- ").count(), 0);
    assert_eq!(dot.matches("[label=").count(), 3);
}

#[test]
fn presentation_input_and_coset_limit_env() {
    let o = ccc(&["verify", "--presentation", "a, b | a^5, b^2, b a b^-1 a"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("dihedral-quotient:5"));

    let o = Command::new(env!("CARGO_BIN_EXE_ccc"))
        .args(["report", "--family", "v8m:3"])
        .env("CCC_COSET_LIMIT", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coset-limit"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["scan", "--family", "nonsense", "--m", "3"][..],
        &["scan", "--family", "unm", "--m", "3..5"],
        &["scan", "--case", "frobenius-pq", "--p", "2", "--q", "7"],
        &["verify"],
        &["props", "--family", "dihedral:2"],
        &["family", "--family", "dihedral:4", "--aux", "a4"],
        &["--coset-limit", "0", "family", "--aux", "a4"],
    ] {
        assert_eq!(ccc(args).status.code(), Some(1), "{args:?}");
    }
}
