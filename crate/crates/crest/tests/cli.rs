//! End-to-end checks of the command-line surfaces: flags, formats, exit
//! codes.

use std::path::Path;
use std::process::Command;

fn crest() -> Command {
    Command::new(env!("CARGO_BIN_EXE_crest"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn bounds_sweep_writes_monotone_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let status = crest()
        .args([
            "bounds", "--k", "10", "--eps", "0.9", "--delta", "0.3333333333333333",
            "--n-min", "16", "--n-max", "1048576", "--points", "24",
            "--out", out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n_nodes,m_pilots,ratio");
    let ratios: Vec<f64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(ratios.len() > 10);
    assert!(ratios.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    assert!(ratios.iter().all(|&r| r <= 1.0));
}

#[test]
fn recover_reports_full_recovery_at_full_pilots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phase.csv");
    let status = crest()
        .args([
            "recover", "--n", "24", "--k-grid", "2", "--m-grid", "12,24",
            "--trials", "20", "--seed", "3", "--out", out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let text = read(&out);
    assert!(text.starts_with("k,m_pilots,trials,successes,fraction\n"));
    let last = text.lines().last().unwrap();
    assert_eq!(last, "2,24,20,20,1.0");
}

#[test]
fn json_format_is_valid_and_mirrors_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phase.json");
    let status = crest()
        .args([
            "recover", "--n", "16", "--k-grid", "1", "--m-grid", "8",
            "--trials", "5", "--out", out.to_str().unwrap(), "--format", "json",
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let rows: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert_eq!(rows[0]["k"], 1);
    assert_eq!(rows[0]["trials"], 5);
}

#[test]
fn selftest_passes_and_prints_per_check_lines() {
    let output = crest().arg("selftest").output().unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    let passes = stdout.lines().filter(|l| l.starts_with("PASS ")).count();
    assert!(passes >= 7, "expected at least 7 checks, saw:\n{stdout}");
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn bad_arguments_exit_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    // Unknown output format.
    let status = crest()
        .args([
            "recover", "--n", "8", "--k-grid", "1", "--m-grid", "4",
            "--out", dir.path().join("x.csv").to_str().unwrap(),
            "--format", "xml",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // Invalid grid (k > n).
    let status = crest()
        .args([
            "recover", "--n", "4", "--k-grid", "9", "--m-grid", "4",
            "--out", dir.path().join("y.csv").to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // Missing config file.
    let status = crest()
        .args([
            "simulate", "--config", "/nonexistent/sim.toml",
            "--out", dir.path().join("z.csv").to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // Help exits 0.
    let status = crest().arg("--help").status().unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn multi_power_runs_write_suffixed_files() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sim.toml");
    std::fs::write(
        &config,
        r#"
            n = 6
            trials = 2
            master_seed = 5
            m_grid = [3]
            power_grid = [1.0, 10.0]
            estimator = "linear-pinv"

            [channel]
            kind = "sparse"
            sparsity = 2
        "#,
    )
    .unwrap();
    let out = dir.path().join("rows.csv");
    let status = crest()
        .args([
            "simulate", "--config", config.to_str().unwrap(),
            "--out", out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    assert!(!out.exists());
    for suffix in ["rows-p1.csv", "rows-p10.csv"] {
        let text = read(&dir.path().join(suffix));
        assert!(text.starts_with("trial,m_over_n,estimator,"));
        assert_eq!(text.lines().count(), 3, "{suffix}: header + 2 trials");
    }
}
