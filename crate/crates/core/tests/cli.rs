use std::process::Command;

use ioncollide::cli::run;
use ioncollide::sweep::read_csv;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ioncollide").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn field(table: &str, key: &str) -> f64 {
    table
        .lines()
        .find_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(key)).then(|| it.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("no `{key}` in\n{table}"))
}

const YB: [&str; 6] = [
    "--species",
    "Yb-171",
    "--omega-xy",
    "2pi*10MHz",
    "--omega-perp",
    "5",
];

#[test]
fn design_reports_ytterbium_point() {
    let mut args = vec!["design"];
    args.extend(YB);
    let (code, out, _) = call(&args);
    assert_eq!(code, 0);
    let l = field(&out, "L");
    let j = field(&out, "J_over_hbar");
    assert!((l / 103e-6 - 1.0).abs() < 0.02, "L = {l}");
    assert!((j / 190.0 - 1.0).abs() < 0.05, "J = {j}");
}

#[test]
fn table_and_csv_agree_to_twelve_digits() {
    let mut args = vec!["coupling", "--L", "120um"];
    args.extend(YB);
    let (_, table, _) = call(&args);
    args.extend(["--format", "csv"]);
    let (code, csv, _) = call(&args);
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    for key in ["L", "J_over_hbar", "U_over_hbar", "alpha", "A"] {
        let i = header.iter().position(|h| *h == key).unwrap();
        let full: f64 = row[i].parse().unwrap();
        let shown = field(&table, key);
        assert!(
            ((full - shown) / full).abs() < 1e-11,
            "{key}: {full} vs {shown}"
        );
    }
}

#[test]
fn sweep_writes_increasing_rows_and_script() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("be.csv");
    let (code, _, err) = call(&[
        "sweep",
        "--species",
        "Be-9",
        "--omega-xy",
        "2pi*10MHz",
        "--omega-perp",
        "5",
        "--L",
        "50um:500um:25:log",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let rows = read_csv(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 25);
    assert!(rows.windows(2).all(|w| w[1].length > w[0].length));
    assert!((rows[0].length - 50e-6).abs() < 1e-18);
    assert!((rows[24].length - 500e-6).abs() < 1e-18);
    let script = std::fs::read_to_string(dir.path().join("be.gp")).unwrap();
    assert!(script.contains("logscale xy") && script.contains("be.csv"));
    // Nothing else was written.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn quadrature_falls_back_when_blocked() {
    let mut args = vec!["coupling", "--L", "20um", "--method", "quadrature"];
    args.extend(YB);
    let (code, out, err) = call(&args);
    assert_eq!(code, 0);
    assert!(err.contains("classical"), "{err}");
    assert!(out.contains("classical"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = call(&[
        "coupling",
        "--species",
        "Xe-131",
        "--omega-xy",
        "1e8",
        "--omega-z",
        "1e7",
        "--L",
        "1e-4",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("Xe-131"));
    assert_eq!(call(&["no-such-command"]).0, 2);
    assert_eq!(
        call(&[
            "coupling",
            "--species",
            "Yb-171",
            "--omega-xy",
            "fast",
            "--omega-z",
            "1",
            "--L",
            "1"
        ])
        .0,
        2
    );
    // Classical treatment of a trap whose ions do collide is a regime error.
    let mut args = vec!["coupling", "--L", "200um", "--method", "classical"];
    args.extend(YB);
    let (code, _, err) = call(&args);
    assert_eq!(code, 1, "{err}");
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "species = Yb-171\nomega_xy = 2pi*10MHz\nomega-perp = 5\nL = 50um\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let (code, out, err) = call(&["coupling", "--config", c]);
    assert_eq!(code, 0, "{err}");
    assert!((field(&out, "L") - 50e-6).abs() < 1e-15);
    let (_, out, _) = call(&["coupling", "--config", c, "--L", "80um"]);
    assert!((field(&out, "L") - 80e-6).abs() < 1e-15);
}

#[test]
fn config_defines_species() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ca.json");
    std::fs::write(&cfg, r#"{"species": {"Ca-40": {"mass_u": 39.962591}}}"#).unwrap();
    let (code, out, err) = call(&[
        "species",
        "--config",
        cfg.to_str().unwrap(),
        "--name",
        "Ca-40",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!((field(&out, "mass_u") - 39.962591).abs() < 1e-9);
}

#[test]
fn gate_report() {
    let (code, out, _) = call(&[
        "gate",
        "--j",
        "200",
        "--u",
        "1e4",
        "--e0",
        "2pi*1GHz",
        "--omega-z",
        "2pi*2MHz",
    ]);
    assert_eq!(code, 0);
    let t_g = field(&out, "t_g");
    assert!((t_g / (3.0 * std::f64::consts::PI / 800.0) - 1.0).abs() < 1e-11);
    assert!(field(&out, "decomposition_residual") < 1e-12);
    assert!(out.contains("matrix"));
    let (code, json, _) = call(&[
        "gate",
        "--j",
        "200",
        "--e0",
        "0",
        "--omega-z",
        "1e7",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);
    // The electron has no fixed qubit splitting.
    let (code, _, err) = call(&[
        "gate",
        "--species",
        "electron",
        "--omega-xy",
        "2pi*100GHz",
        "--omega-perp",
        "20544",
        "--L",
        "10mm",
    ]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn schedule_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    let p = path.to_str().unwrap();
    let (code, _, err) = call(&[
        "schedule",
        "--labels",
        "a,b,c,d",
        "--a",
        "a",
        "--b",
        "d",
        "--t-g",
        "12.5ms",
        "--omega-z",
        "2pi*2MHz",
        "--output",
        p,
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = call(&["validate", "--labels", "a,b,c,d", "--schedule", p]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("a-d") || out.contains("d-a"));
    let text = std::fs::read_to_string(&path).unwrap();
    let truncated: String = text
        .lines()
        .take(text.lines().count() - 1)
        .map(|l| format!("{l}\n"))
        .collect();
    std::fs::write(&path, truncated).unwrap();
    let (code, out, _) = call(&["validate", "--labels", "a,b,c,d", "--schedule", p]);
    assert_eq!(code, 1, "{out}");
    let (code, _, _) = call(&[
        "schedule",
        "--n-traps",
        "3",
        "--a",
        "q0",
        "--b",
        "q0",
        "--t-g",
        "1ms",
        "--omega-z",
        "1e7",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_ioncollide"))
        .args([
            "sweep",
            "--species",
            "Yb-171",
            "--omega-xy",
            "2pi*10MHz",
            "--omega-perp",
            "5",
            "--L",
            "100um:200um:3",
            "--output",
            "yb.csv",
        ])
        .env("IONCOLLIDE_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    assert!(dir.path().join("yb.csv").exists());
    assert!(dir.path().join("yb.gp").exists());
}
