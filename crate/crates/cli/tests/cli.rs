use std::process::{Command, Output};

fn gcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcr"))
        .args(args)
        .env_remove("GCR_THREADS")
        .output()
        .expect("run gcr")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_counts() {
    let o = gcr(&["classify", "--type", "E6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("56 classes"));
    let o = gcr(&["classify", "--type", "e7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("96 classes (95 non-trivial)"));
}

#[test]
fn classify_csv_parses() {
    let o = gcr(&["--format", "csv", "classify", "--type", "E6"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 56);
    assert_eq!(&rows[0][1], "1");
}

#[test]
fn e6_scan_has_eleven_rows() {
    let o = gcr(&["--format", "json", "scan", "--type", "E6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 11);
    assert_eq!(v["passed"], true);
}

#[test]
fn e7_scan_rows() {
    let o = gcr(&["--format", "json", "scan", "--type", "E7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let orders: Vec<u64> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, [14, 42]);
}

#[test]
fn json_does_not_depend_on_threads() {
    let a = gcr(&["--threads", "1", "--format", "json", "scan", "--type", "E7"]);
    let b = gcr(&["--threads", "3", "--format", "json", "scan", "--type", "E7"]);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_gcr"))
        .args(["--format", "json", "scan", "--type", "E7"])
        .env("GCR_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn json_field_order_is_fixed() {
    let o = gcr(&["--format", "json", "verify", "--type", "E7", "--case", "2"]);
    let s = stdout(&o);
    let keys = ["\"command\"", "\"golden_version\"", "\"passed\"", "\"checks\"", "\"result\""];
    let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    let case = ["\"case\"", "\"field_degree\"", "\"order\"", "\"orbits\"", "\"dims\"", "\"gcr\"", "\"non_mcr\"", "\"transcripts\""];
    let pos: Vec<usize> = case.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn verify_e8_case1_is_green() {
    let o = gcr(&["verify", "--type", "E8", "--case", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_e6_case4_reports_the_block_obstruction() {
    // The listed t fixes a block system of K′, so only the G-cr stage fails.
    let o = gcr(&["verify", "--type", "E6", "--case", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let s = stdout(&o);
    let fails: Vec<&str> = s.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 1);
    assert!(fails[0].contains("G-cr"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mismatch"));
}

#[test]
fn usage_errors() {
    assert_eq!(gcr(&["verify", "--type", "E6", "--case", "99"]).status.code(), Some(3));
    assert_eq!(gcr(&["kulshammer", "--example", "b3"]).status.code(), Some(3));
    assert_eq!(gcr(&["scan", "--type", "E6", "--field", "3"]).status.code(), Some(3));
    assert_eq!(gcr(&["classify", "--type", "F4"]).status.code(), Some(3));
    assert_eq!(gcr(&["kulshammer", "--example", "a2", "--d", "4"]).status.code(), Some(3));
    // GF(2) has no element of order 3
    assert_eq!(gcr(&["kulshammer", "--example", "e6", "--field", "1"]).status.code(), Some(3));
    assert_eq!(gcr(&["bogus"]).status.code(), Some(3));
    assert_eq!(gcr(&["--help"]).status.code(), Some(0));
    assert_eq!(gcr(&["--version"]).status.code(), Some(0));
}

#[test]
fn kulshammer_e6() {
    let o = gcr(&["kulshammer", "--example", "e6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order of H' = <t_i, q_1, q_2>: 1458"));
}

#[test]
fn kulshammer_a2() {
    // d = 3 makes t scalar and the family collapses.
    let o = gcr(&["kulshammer", "--example", "a2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL non-conjugacy off the diagonal: 12 conjugate"));
    let o = gcr(&["kulshammer", "--example", "a2", "--d", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rational_demo() {
    let o = gcr(&["--format", "json", "rational-demo"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let sq: Vec<bool> = v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["is_square"].as_bool().unwrap())
        .collect();
    assert_eq!(sq, [false, true, false, true, false]);
}

#[test]
fn no_golden_skips_comparisons() {
    let o = gcr(&["--no-golden", "--format", "json", "classify", "--type", "E6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().is_empty());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("gcr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("r.json");
    let o = gcr(&["--format", "json", "-o", p.to_str().unwrap(), "rational-demo"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["command"], "rational-demo");
    std::fs::remove_dir_all(dir).unwrap();
}
