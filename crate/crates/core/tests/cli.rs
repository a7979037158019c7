use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bcva(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcva")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

const FIG1: &str = r#"{
  "instrument": {"type": "forward", "s0": 1.0, "sigma": 0.4, "strike": 1.0, "maturity": 5.0},
  "default_model": {"lambda_a": 0.1, "lambda_b": 0.05, "kendall_tau": 0.0},
  "sweep": {"type": "tau", "grid": [0.0, 0.25, 0.5, 0.75, 0.9]}
}"#;

#[test]
fn sweep_fig1_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "fig1.json", FIG1);
    let out = bcva(&["sweep", &cfg]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with(bcva::cli::CSV_HEADER));
    let d = column(&csv, "difference");
    assert_eq!(d.len(), 5);
    assert!(d.windows(2).all(|w| w[1] > w[0]), "{d:?}");
}

#[test]
fn sweep_fig3_flattens_toward_ucva() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "fig3.json",
        r#"{
          "instrument": {"type": "forward", "s0": 1.0, "sigma": 0.4, "strike": 0.8, "maturity": 5.0},
          "default_model": {"lambda_a": 0.1, "lambda_b": 0.05, "kendall_tau": 0.9},
          "sweep": {"type": "lambda_a", "grid": [0.1, 0.5, 1.0, 2.0, 5.0]}
        }"#,
    );
    let out = bcva(&["sweep", &cfg]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let d = column(&csv, "difference");
    let ucva = column(&csv, "ucva_a");
    assert!(d.windows(2).all(|w| w[1] >= w[0]));
    assert!((d[4] / ucva[4] - 1.0).abs() < 0.05);
    assert!(ucva.iter().all(|&u| u == ucva[0]));
}

#[test]
fn price_zcb_to_file_with_svg() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "zcb.json",
        r#"{"instrument": {"type": "zcb", "maturity": 5.0},
            "default_model": {"lambda_a": 0.1, "lambda_b": 0.05, "theta": 1.0}}"#,
    );
    let out_path = dir.path().join("out.csv");
    let svg_path = dir.path().join("out.svg");
    let out = bcva(&[
        "price",
        &cfg,
        "--out",
        out_path.to_str().unwrap(),
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = fs::read_to_string(out_path).unwrap();
    assert!((column(&csv, "difference")[0] - 0.045_321).abs() < 1e-6);
    assert_eq!(column(&csv, "difference_stderr")[0], 0.0);
    assert!(fs::read_to_string(svg_path).unwrap().starts_with("<svg"));
}

#[test]
fn sweep_svg_has_polyline() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "fig1.json", FIG1);
    let svg = dir.path().join("fig1.svg");
    assert!(bcva(&["sweep", &cfg, "--svg", svg.to_str().unwrap()]).status.success());
    let text = fs::read_to_string(svg).unwrap();
    assert!(text.contains("<polyline") && text.contains("kendall_tau"));
}

#[test]
fn config_errors_exit_2_with_field() {
    let dir = tempfile::tempdir().unwrap();
    let both = FIG1.replace(r#""kendall_tau": 0.0"#, r#""kendall_tau": 0.0, "theta": 3.0"#);
    let cfg = write(dir.path(), "both.json", &both);
    let out = bcva(&["sweep", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("default_model"));

    let cfg = write(dir.path(), "bad.json", "{\n  \"instrument\": 3\n}");
    let out = bcva(&["price", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let cfg = write(dir.path(), "fig1.json", FIG1);
    assert_eq!(bcva(&["price", &cfg]).status.code(), Some(2));
    assert_eq!(bcva(&["price", "/nonexistent/config.json"]).status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // Simulated prices overflow to infinity on the path-level estimator.
    let cfg = write(
        dir.path(),
        "overflow.json",
        r#"{"instrument": {"type": "forward", "s0": 1e308, "sigma": 5.0, "strike": 1.0, "maturity": 5.0},
            "default_model": {"lambda_a": 1.0, "lambda_b": 1.0, "theta": 2.0},
            "method": {"type": "mc", "n_paths": 1000, "seed": 1, "estimator": "path_level"}}"#,
    );
    let out = bcva(&["price", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("chunk 0"));
}

#[test]
fn validate_passes_and_is_deterministic() {
    let a = bcva(&["validate"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let b = bcva(&["--threads", "2", "validate"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("PASS survival_partial_fd"));
    assert!(text.ends_with("0 failed\n"));
}
