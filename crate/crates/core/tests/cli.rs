//! Integration tests for the batch front end, driving the same code path as
//! the `ss` binary.

use bkss_core::graph::Family;
use bkss_core::job::{run, CheckFlags, JobConfig, OutputFormat, EXIT_OK, EXIT_TRUNCATION};
use bkss_core::linalg::FieldSpec;
use bkss_core::report::parse_csv;

fn config(format: OutputFormat) -> JobConfig {
    JobConfig {
        family: Family::Links,
        strands: 2,
        ambient: 4,
        q_max: 6,
        field: FieldSpec::Rationals,
        format,
        output: None,
        checks: CheckFlags::default(),
        max_basis: None,
        threads: Some(2),
    }
}

#[test]
fn json_report_has_expected_entry_and_is_byte_identical() {
    let cfg = config(OutputFormat::Json);
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(a.exit_code, EXIT_OK);
    assert_eq!(a.rendered, b.rendered, "canonical body must be stable");

    let doc: serde_json::Value = serde_json::from_str(&a.rendered).unwrap();
    assert_eq!(doc["spec"]["family"], "links");
    assert_eq!(doc["spec"]["field"], "q");
    let rows = doc["rows"].as_array().unwrap();
    let row3 = &rows[3];
    let entry = row3["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["p"] == 2)
        .unwrap();
    assert_eq!(entry["e1"], 4);
    assert_eq!(entry["e2"], 3);
    assert_eq!(doc["verdict"]["cohomology"], "established");
    assert_eq!(doc["checks"]["d1sq"], "pass");
    // No wall-clock data in the canonical body.
    assert!(!a.rendered.contains("elapsed"));
}

#[test]
fn csv_and_json_encode_the_same_dimensions() {
    let json_out = run(&config(OutputFormat::Json)).unwrap();
    let csv_out = run(&config(OutputFormat::Csv)).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&json_out.rendered).unwrap();
    let mut from_json = Vec::new();
    for row in doc["rows"].as_array().unwrap() {
        let q = row["q"].as_u64().unwrap() as u32;
        for e in row["entries"].as_array().unwrap() {
            from_json.push((
                q,
                e["p"].as_u64().unwrap() as u32,
                e["e1"].as_u64().unwrap() as usize,
                e["e2"].as_u64().map(|v| v as usize),
            ));
        }
    }
    let from_csv = parse_csv(&csv_out.rendered);
    assert_eq!(from_json, from_csv);
}

#[test]
fn report_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut cfg = config(OutputFormat::Json);
    cfg.output = Some(path.clone());
    let out = run(&cfg).unwrap();
    let on_disk = std::fs::read_to_string(&path).unwrap();
    assert_eq!(on_disk, out.rendered);
}

#[test]
fn truncation_reports_exit_code_3() {
    let mut cfg = config(OutputFormat::Json);
    cfg.max_basis = Some(3);
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code, EXIT_TRUNCATION);
    let doc: serde_json::Value = serde_json::from_str(&out.rendered).unwrap();
    let any_truncated = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["truncated"] == true);
    assert!(any_truncated, "truncation must be explicit in the report");
}

#[test]
fn braid_job_matches_oracle_diagonal() {
    let cfg = JobConfig {
        family: Family::Braids,
        strands: 2,
        ambient: 6,
        q_max: 12,
        field: FieldSpec::Rationals,
        format: OutputFormat::Json,
        output: None,
        checks: CheckFlags::default(),
        max_basis: None,
        threads: Some(2),
    };
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code, EXIT_OK);
    for row in &out.report.rows {
        for e in &row.entries {
            let want = if row.q == 4 * e.p { 1 } else { 0 };
            assert_eq!(e.e2, Some(want), "q={} p={}", row.q, e.p);
        }
    }
}

#[test]
fn binary_end_to_end() {
    let exe = env!("CARGO_BIN_EXE_ss");
    let run = |args: &[&str]| std::process::Command::new(exe).args(args).output().unwrap();

    // Default qmax plus an explicit check: exit 0.
    let out = run(&["--family", "links", "--strands", "1", "--ambient", "4", "--check", "d1sq"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // JSON to stdout, byte-identical across two separate processes.
    let args = [
        "--family", "links", "--strands", "2", "--ambient", "4", "--qmax", "3", "--field", "q",
        "--format", "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let entry = doc["rows"][3]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["p"] == 2)
        .unwrap()
        .clone();
    assert_eq!(entry["e2"], 3);

    // Usage errors exit 2.
    let out = run(&["--family", "nonsense", "--ambient", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["--family", "braids", "--strands", "2", "--ambient", "3", "--qmax", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // Truncation exits 3.
    let out = run(&[
        "--family", "links", "--strands", "2", "--ambient", "4", "--qmax", "3", "--max-basis", "2",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // Basis printing.
    let out = run(&["--family", "links", "--strands", "2", "--ambient", "4", "--print-basis", "3,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(1,1)-(2,2)"));
}

#[test]
fn prime_field_flag() {
    let mut cfg = config(OutputFormat::Json);
    cfg.field = FieldSpec::Prime(3);
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out.rendered).unwrap();
    assert_eq!(doc["spec"]["field"], "3");
}
