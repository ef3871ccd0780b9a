use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn padewkb(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padewkb")).args(args).current_dir(dir).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn malformed_json_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.json", "{\"potential\": {\"kind\": \"tanh2\", ");
    let out = padewkb(&["spectrum", "--config", "bad.json", "--out", "levels.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("levels.csv").exists());
    assert!(!dir.path().join("levels.csv.partial").exists());
}

#[test]
fn unknown_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.json", r#"{"kind": "tanh2", "U": 25, "p": 1, "depth": 3}"#);
    let out = padewkb(&["spectrum", "--config", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infinite_well_extract_points_to_density() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "h.json", r#"{"kind": "harmonic", "k": 1}"#);
    let out = padewkb(&["extract", "--config", "h.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("density"));
}

#[test]
fn spectrum_csv_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "t.json", r#"{"kind": "tanh2", "U": 25, "p": 1}"#);
    let out = padewkb(&["spectrum", "--config", "t.json", "--out", "t.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,eps_wkb,eps_improved,eps_oracle,abs_err_wkb,abs_err_improved,delta_used"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 5);
    let cells: Vec<_> = rows[0].split(',').collect();
    assert_eq!(cells[0], "0");
    assert_eq!(cells[3], "");
    let eps: f64 = cells[2].parse().unwrap();
    let s = (101f64.sqrt() - 1.0) / 2.0;
    assert!((eps - (25.0 - s * s)).abs() < 1e-8, "{eps}");
    assert!(!text.contains('\r'));
}

#[test]
fn harmonic_spectrum_needs_emax() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "h.json", r#"{"kind": "harmonic", "k": 1}"#);
    let out = padewkb(&["spectrum", "--config", "h.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = padewkb(&["spectrum", "--config", "h.json", "--emax", "10", "--oracle"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect()).collect();
    assert_eq!(rows.len(), 5);
    for (n, row) in rows.iter().enumerate() {
        let exact = 2.0 * n as f64 + 1.0;
        assert!((row[1] - exact).abs() < 1e-8);
        assert!((row[3] - exact).abs() < 1e-6);
    }
}

#[test]
fn plot_data_rejected_outside_spectrum_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "t.json", r#"{"kind": "tanh2", "U": 25, "p": 1}"#);
    let out = padewkb(&["extract", "--config", "t.json", "--plot-data", "p.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("p.csv").exists());
}

#[test]
fn seeded_examples_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = padewkb(&["--seed-examples", "seeds"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = padewkb(&["compare", "--config", "seeds/tanh2_u4.json", "--out", "c.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("improved"));
    assert_eq!(fs::read_to_string(dir.path().join("c.csv")).unwrap().lines().count(), 3);
}
