use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn patstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patstat")).args(args).env_remove("PATSTAT_DATA_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    let o = patstat(&["fixture", "golden", "--out", data.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let cohort = dir.path().join("cohort.csv");
    let o = patstat(&[
        "cohort",
        data.to_str().unwrap(),
        "--ipc-prefix",
        "F03D",
        "--year",
        "2005",
        "--save",
        cohort.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    dir
}

fn paths(dir: &Path) -> (String, String) {
    (dir.join("data").to_string_lossy().into_owned(), dir.join("cohort.csv").to_string_lossy().into_owned())
}

const INDICATORS: [&str; 10] = [
    "national-phase",
    "priority-status",
    "family-size",
    "geog-family-size",
    "fractional-count",
    "fractional-shares",
    "country-count",
    "forward-citations",
    "grant-status",
    "external-numbers",
];

#[test]
fn golden_validates_clean() {
    let dir = golden_dir();
    let (data, _) = paths(dir.path());
    let o = patstat(&["validate", &data]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total violations: 0"));
}

#[test]
fn family_size_first_row() {
    let dir = golden_dir();
    let (data, cohort) = paths(dir.path());
    let o = patstat(&["indicator", "family-size", &data, "--cohort", &cohort]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "appln_id,family_size");
    assert_eq!(lines[1], "65303,9");
}

#[test]
fn cohort_file_lists_ids_behind_provenance() {
    let dir = golden_dir();
    let (_, cohort) = paths(dir.path());
    let text = fs::read_to_string(cohort).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# provenance: ipc_prefix=F03D filing_year=2005 kinds=A,W"));
    assert_eq!(lines.next(), Some("appln_id"));
    assert_eq!(lines.next(), Some("55286477"));
}

#[test]
fn unmatched_prefix_gives_header_only() {
    let dir = golden_dir();
    let (data, _) = paths(dir.path());
    let o = patstat(&["cohort", &data, "--ipc-prefix", "ZZZZ", "--year", "2005"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn oracle_output_is_byte_identical_for_every_indicator() {
    let dir = golden_dir();
    let (data, cohort) = paths(dir.path());
    for name in INDICATORS {
        for format in ["csv", "json", "table"] {
            let base = ["indicator", name, &data, "--cohort", &cohort, "--format", format];
            let fast = patstat(&base);
            let slow = patstat(&[&base[..], &["--oracle"]].concat());
            assert_eq!(fast.status.code(), Some(0), "{name}");
            assert_eq!(fast.stdout, slow.stdout, "{name} {format}");
        }
    }
    let o = patstat(&["cohort", &data, "--ipc-prefix", "F03D", "--year", "2005"]);
    let p = patstat(&["cohort", &data, "--ipc-prefix", "F03D", "--year", "2005", "--oracle"]);
    assert_eq!(o.stdout, p.stdout);
}

#[test]
fn csv_and_json_carry_the_same_rows() {
    let dir = golden_dir();
    let (data, cohort) = paths(dir.path());
    for name in ["forward-citations", "fractional-count", "national-phase"] {
        let csv_out = stdout(&patstat(&["indicator", name, &data, "--cohort", &cohort]));
        let json_out = stdout(&patstat(&["indicator", name, &data, "--cohort", &cohort, "--format", "json"]));
        let doc: Value = serde_json::from_str(&json_out).unwrap();
        assert_eq!(doc["indicator"], name);
        assert!(doc["params"].is_object());
        let rows = doc["rows"].as_array().unwrap();
        let mut reader = csv::Reader::from_reader(csv_out.as_bytes());
        let header = reader.headers().unwrap().clone();
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(records.len(), rows.len());
        for (record, row) in records.iter().zip(rows) {
            for (column, field) in header.iter().zip(record.iter()) {
                let v = &row[column];
                let as_text = match v {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert_eq!(as_text, field, "{name} {column}");
            }
        }
    }
}

#[test]
fn output_flag_writes_the_file() {
    let dir = golden_dir();
    let (data, cohort) = paths(dir.path());
    let out = dir.path().join("grant.csv");
    let o = patstat(&["indicator", "grant-status", &data, "--cohort", &cohort, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(out).unwrap().starts_with("appln_id,granted\r\n21465239,1\r\n"));
}

#[test]
fn data_dir_from_environment() {
    let dir = golden_dir();
    let (data, _) = paths(dir.path());
    let o = Command::new(env!("CARGO_BIN_EXE_patstat"))
        .args(["validate"])
        .env("PATSTAT_DATA_DIR", &data)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn dangling_reference_exits_3() {
    let dir = golden_dir();
    let (data, _) = paths(dir.path());
    let path = Path::new(&data).join("tls211_pat_publn.csv");
    let mut text = fs::read_to_string(&path).unwrap();
    text.push_str("1,424242,GB,1234567,A,2006-01-01,0\n");
    fs::write(&path, text).unwrap();
    let o = patstat(&["validate", &data]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_rows_exit_2_in_strict_mode_and_3_on_validate() {
    let dir = golden_dir();
    let (data, cohort) = paths(dir.path());
    let path = Path::new(&data).join("tls201_appln.csv");
    let mut text = fs::read_to_string(&path).unwrap();
    text.push_str("not-a-number,GB,1,A,2005-01-01,0\n");
    fs::write(&path, text).unwrap();
    assert_eq!(patstat(&["validate", &data, "--strict"]).status.code(), Some(2));
    assert_eq!(patstat(&["validate", &data]).status.code(), Some(3));
    // lenient indicator runs skip the row
    let o = patstat(&["indicator", "family-size", &data, "--cohort", &cohort]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn io_and_usage_errors() {
    let o = patstat(&["validate", "/definitely/not/here"]);
    assert_eq!(o.status.code(), Some(2));
    let o = patstat(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = patstat(&["indicator", "family-size", "/tmp", "--cohort", "x.csv", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(1));

    let dir = golden_dir();
    let (data, cohort) = paths(dir.path());
    let o = patstat(&["indicator", "external-numbers", &data, "--cohort", &cohort, "--office", "FR"]);
    assert_eq!(o.status.code(), Some(1));
    let o = patstat(&["indicator", "family-size", &data, "--cohort", "/no/cohort.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = patstat(&["cohort", &data, "--ipc-prefix", "", "--year", "2005"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn random_fixture_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let o = patstat(&["fixture", "random", "--seed", "7", "--n-applications", "300", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    for entry in fs::read_dir(&a).unwrap() {
        let name = entry.unwrap().file_name();
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
    assert_eq!(patstat(&["validate", a.to_str().unwrap()]).status.code(), Some(0));
    let o = patstat(&["fixture", "random", "--seed", "7", "--pct-share", "2", "--out", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
