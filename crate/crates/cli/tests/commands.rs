use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kerr-wigner")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .trim()
}

#[test]
fn schwarzschild_fall_is_null() {
    let o = run(&["radial-fall", "--chi", "0", "--x-end", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let omega: f64 = field(&stdout(&o), "omega_rad:").parse().unwrap();
    assert!(omega.abs() < 1e-8);
}

#[test]
fn extremal_fall_reaches_published_angle() {
    let o = run(&["radial-fall", "--chi", "0.5", "--x-end", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let omega: f64 = field(&text, "omega_rad:").parse().unwrap();
    assert!((omega - 3.1828).abs() < 0.05);
    assert!(field(&text, "chi:").contains("extremal"));
    assert!(text.contains("within bounds: yes"));
    assert!(text.contains("bell_chsh:"));
}

#[test]
fn censorship_violation_exits_2() {
    let o = run(&["radial-fall", "--chi", "0.7", "--x-end", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("-0.5 <= a/rs <= 0.5"));
}

#[test]
fn missing_orbit_exits_3() {
    let o = run(&["circular", "--chi", "0", "--x", "0.8", "--sense", "co"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn unreachable_tolerance_exits_4() {
    let o = run(&["radial-fall", "--chi", "-0.5", "--x-end", "1", "--tol", "1e-20"]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn bad_values_exit_2() {
    assert_eq!(run(&["radial-fall", "--chi", "0.2", "--x-end", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["radial-fall", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["circular", "--chi", "0.1"]).status.code(), Some(2));
}

#[test]
fn circular_reports_both_conventions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("orbit.csv");
    let o = run(&[
        "circular",
        "--chi",
        "0.3",
        "--x",
        "0.3",
        "--sense",
        "counter",
        "--orbits",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let delta: f64 = field(&text, "delta_omega:").parse().unwrap();
    let delta_n: f64 = field(&text, "delta_omega_n (n = 4):").parse().unwrap();
    assert!((delta_n - 4.0 * delta).abs() < 1e-8);
    assert!(text.contains("epsilon |0> [omega = 2 pi delta_omega_n]"));
    assert!(text.contains("epsilon |0> [omega = n omega_orbit]"));

    let csv = fs::read_to_string(out).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("scenario,chi,x,sense,orbits,omega_orbit_rad,delta_omega,delta_omega_n"));
    assert!(lines[1].starts_with("circular,3.00000000e-1,"));
}

#[test]
fn figure1_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let o = run(&["figure1", "--chi-count", "3", "--samples", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(!csv.contains('\r'));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("chi,x,omega_rad,err_estimate,error"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 30);
    for row in &rows {
        assert_eq!(row.len(), 5);
        assert_eq!(row[4], "");
    }
    let last = rows.last().unwrap();
    assert_eq!((last[0], last[1]), ("5.00000000e-1", "1.00000000e0"));
    let omega: f64 = last[2].parse().unwrap();
    assert!((omega - 3.1828).abs() < 0.05);

    // deterministic and identical without parallelism
    let again = dir.path().join("fig1_seq.csv");
    let o = run(&["figure1", "--chi-count", "3", "--samples", "10", "--sequential", "--out", again.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv, fs::read_to_string(again).unwrap());
}

#[test]
fn figure2_csv_to_stdout() {
    let o = run(&["figure2", "--samples", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("x,delta_omega_aplus,delta_omega_aminus,delta_omega_zero,delta_omega_dynbound_plus,delta_omega_dynbound_minus,admissible")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 30);
    for row in rows.iter().filter(|r| r[6] == "true") {
        let v: Vec<f64> = row[1..6].iter().map(|c| c.parse().unwrap()).collect();
        assert!(v.iter().all(|d| *d > 0.0 && *d < 1.2));
        assert!(v[0] > v[2] && v[2] > v[1]);
    }
    assert_eq!(rows.last().unwrap()[6], "false");
}

#[test]
fn json_scenario_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("scenario.json");
    fs::write(&spec, r#"{"scenario": "radial_fall", "chi": 0.7, "x": 1.0, "tol": 1e-8}"#).unwrap();
    // file alone violates censorship
    assert_eq!(run(&["radial-fall", "--json", spec.to_str().unwrap()]).status.code(), Some(2));
    // flag wins
    let o = run(&["radial-fall", "--json", spec.to_str().unwrap(), "--chi", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // wrong command for the file
    let o = run(&["circular", "--json", spec.to_str().unwrap(), "--chi", "0", "--x", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
    // typos are rejected
    fs::write(&spec, r#"{"chii": 0.1}"#).unwrap();
    assert_eq!(run(&["radial-fall", "--json", spec.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn check_enumerates_deviations() {
    let o = run(&["check", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("connection oracle: 10 points"));
    assert!(text.contains("[conserved-charges]: 20 points, 0 deviations"));
    assert!(text.contains("[metric]: 20 points, 20 deviations"));
    assert_eq!(text.matches("rel=").count(), 20);
}
