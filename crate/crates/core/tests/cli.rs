use std::process::{Command, Output};

fn legdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legdet"))
        .args(args)
        .env_remove("LEGDET_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_csv_header_and_rows() {
    let o = legdet(&["invariants", "5", "13", "17", "29", "37", "41", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "p,L,A,B,LQ\n5,-1,2,1,1\n13,-1,18,5,13\n17,1,4,1,-3\n29,-1,70,13,57\n37,-1,882,145,737\n41,1,32,5,-27\n"
    );
}

#[test]
fn invariants_text_shows_unit_and_class_number() {
    let o = legdet(&["invariants", "37"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("row (37,-1,882,145,737)"), "{s}");
    assert!(s.contains("h = 1"));
    assert!(s.contains("6 + 1√37"));
}

#[test]
fn validation_exit_codes() {
    assert_eq!(legdet(&["invariants", "15"]).status.code(), Some(2));
    assert_eq!(legdet(&["verify48", "7"]).status.code(), Some(2));
    assert_eq!(legdet(&["cyclo", "19"]).status.code(), Some(2));
    assert_eq!(legdet(&["cyclo", "29"]).status.code(), Some(2));
    assert_eq!(legdet(&["scan", "41", "5"]).status.code(), Some(2));
    assert_eq!(legdet(&["cyclo", "5", "--t", "0,1", "--rho", "0"]).status.code(), Some(2));
}

#[test]
fn passing_suites_exit_zero() {
    let o = legdet(&["verify48", "5", "--points", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify48.sample_point_value  expected=27  actual=27"));
    assert_eq!(legdet(&["verify410", "13"]).status.code(), Some(0));
}

#[test]
fn failing_checks_exit_one() {
    // The normalising product and the bordered differences do not hold.
    let o = legdet(&["cyclo", "5", "--format", "records"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    for line in s.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["schema"], "legdet.report/1");
        if v["status"] == "fail" {
            assert_ne!(v["expected"], v["actual"]);
        }
    }
    assert!(s.contains(r#""check":"cyclo.normalising","status":"fail""#), "{s}");
}

#[test]
fn scan_output_is_byte_identical_across_jobs() {
    let a = legdet(&["scan", "5", "41", "--suites", "invariants,48", "--points", "3", "--format", "csv", "--jobs", "1", "--seed", "5"]);
    let b = legdet(&["scan", "5", "41", "--suites", "invariants,48", "--points", "3", "--format", "csv", "--jobs", "4", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    assert!(s.starts_with("prime,check,status,expected,actual,seed,elapsed_ms\n"));
    assert_eq!(s.matches("invariants.golden_row,pass").count(), 6);
}

#[test]
fn table_detlist() {
    let o = legdet(&["table", "detlist", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "p,det_H\n5,1\n13,13\n17,-3\n29,57\n37,737\n41,-27\n");
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_legdet"))
        .args(["table", "invariants"])
        .env("LEGDET_FORMAT", "csv")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("p,L,A,B,LQ\n"));
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("legdet-cli-{}.jsonl", std::process::id()));
    let o = legdet(&["verify410", "5", "--format", "records", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.lines().count() > 25);
}
