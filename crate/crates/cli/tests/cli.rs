use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn magnomech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magnomech"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn steady_reports_entanglement_at_the_sideband_optimum() {
    let out = magnomech(&["steady"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let en_line = text.lines().find(|l| l.starts_with("E_N")).unwrap();
    let en: f64 = en_line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(en > 0.0, "{text}");
    assert!(text.contains("cavity-pair CM"));
}

#[test]
fn steady_json_without_magnomechanics_has_no_entanglement() {
    let out = magnomech(&["steady", "--set", "coupling_G=0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["EN"].as_f64(), Some(0.0));
    assert_eq!(doc["stable"].as_bool(), Some(true));
    assert_eq!(doc["cavity_cm"].as_array().unwrap().len(), 4);
}

#[test]
fn misspelled_key_is_a_usage_error_naming_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# typo below\nkapa_1 = 1e6\n").unwrap();
    let out = magnomech(&["steady", "--config", path(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("`kapa_1`"), "{}", stderr(&out));
}

#[test]
fn unstable_point_exits_with_physics_status() {
    let out = magnomech(&[
        "steady",
        "--set",
        "delta_1=-1e7",
        "--set",
        "delta_2=-1e7",
        "--set",
        "coupling_G=2e7",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}{}",
        stdout(&out),
        stderr(&out)
    );
    assert!(stdout(&out).contains("stable           false"));
}

#[test]
fn detuning_plane_has_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("plane.csv");
    let out = magnomech(&[
        "sweep",
        "--axis",
        "delta_1:-2:2:81:omega_b",
        "--axis",
        "delta_2:-2:2:81:omega_b",
        "--output",
        path(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("axis1,axis2,stable,EN,duan,nu_minus"));
    assert_eq!(lines.count(), 6561);
}

#[test]
fn one_dimensional_sweep_omits_second_axis_and_repeats_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for file in [&a, &b] {
        let out = magnomech(&["sweep", "--axis", "temperature:0:0.2:21", "-o", path(file)]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("axis1,stable,EN,duan,nu_minus\n"));
    let en: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(en.windows(2).all(|w| w[1] <= w[0]), "{en:?}");
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0.00000000000e0,1,"));
}

#[test]
fn bad_axis_names_the_offending_token() {
    let out = magnomech(&["sweep", "--axis", "delta_1:-2:two:81"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("`two`"), "{}", stderr(&out));
    let out = magnomech(&["sweep", "--axis", "delta_1:-2:2:1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_figure_lists_valid_names() {
    let out = magnomech(&["figure", "fig9"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("fig2a") && err.contains("fig4b"), "{err}");
}

#[test]
fn clap_errors_use_usage_status() {
    assert_eq!(magnomech(&["steady", "--bogus"]).status.code(), Some(1));
    assert_eq!(magnomech(&[]).status.code(), Some(1));
}

#[test]
fn figure_meta_round_trips_to_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = magnomech(&["figure", "fig4b", "--out-dir", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = fs::read(dir.path().join("fig4b.csv")).unwrap();
    let meta = dir.path().join("fig4b.meta.json");
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(doc["axis1"].as_str(), Some("kappa_1:500000:5000000:46"));
    assert_eq!(doc["delta_1"].as_f64(), Some(9e6));

    let again = dir.path().join("again.csv");
    let out = magnomech(&["sweep", "--config", path(&meta), "--output", path(&again)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(csv, fs::read(&again).unwrap());
    assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 46 * 46 + 1);
}

#[test]
fn drive_configuration_derives_the_coupling() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("drive.cfg");
    fs::write(
        &cfg,
        "rabi_omega = 2e13\ng0_bare = 0.3\ndelta_m_bare = 9e6\nformat = json\n",
    )
    .unwrap();
    let out = magnomech(&["steady", "-c", path(&cfg)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["drive"]["coupling_G_hz"].as_f64().unwrap() > 0.0);
}

#[test]
fn normalized_config_parses_back_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("a.cfg");
    fs::write(&cfg, "kappa_2 = 5e5 # narrower\naxis1 = g_2:1e6:4e6:7\n").unwrap();
    let first = magnomech(&["config", "-c", path(&cfg)]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let normalized = dir.path().join("b.cfg");
    fs::write(&normalized, stdout(&first)).unwrap();
    let second = magnomech(&["config", "-c", path(&normalized)]);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("kappa_2 = 500000.0\n"));
}
