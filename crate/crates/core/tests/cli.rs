use std::path::Path;
use std::process::Command;

use rsaf_core::cli::{execute, Mode, RunConfig, RunManifest};
use rsaf_core::{Error, SerCurve};

const SMALL: &str = r#"
name = "small"
seed = 11
snr_db = [0.0, 4.0, 8.0]

[stopping]
min_errors = 50
max_frames = 200000

[[curve]]
scheme = "rs-minmax"
n_relays = 2

[[curve]]
scheme = "apaf"
n_relays = 2
power = { p_s = 1.0, p_r = 1.0 }

[[curve]]
scheme = "rs-optimal"
n_relays = 3
label = "opa3"
power = { total = 3.0, allocation = "opa" }
"#;

fn read(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join(file)).unwrap()
}

#[test]
fn run_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig::from_toml(SMALL).unwrap();
    let manifest = execute(&cfg, Mode::Full, dir.path()).unwrap();
    for f in [
        "rs-minmax_n2.csv",
        "apaf_n2.csv",
        "opa3.csv",
        "analytic.csv",
        "plot.gp",
        "manifest.json",
    ] {
        assert!(dir.path().join(f).is_file(), "{f} missing");
        assert!(manifest.outputs.iter().any(|o| o == f));
    }
    let curve = SerCurve::read_csv(read(dir.path(), "apaf_n2.csv").as_bytes()).unwrap();
    assert_eq!(curve.points.len(), 3);
    assert!(curve.points.iter().all(|p| p.frames > 0));

    let analytic = read(dir.path(), "analytic.csv");
    assert!(analytic.starts_with("label,scheme,n_relays,snr_db,analytic_ser\n"));
    assert_eq!(analytic.lines().count(), 1 + 9);

    let saved: RunManifest = serde_json::from_str(&read(dir.path(), "manifest.json")).unwrap();
    assert_eq!(saved.master_seed, 11);
    assert_eq!(saved.config_digest, cfg.digest().unwrap());
    assert_eq!(saved.config, cfg);
    assert_eq!(saved.schemes.len(), 3);
    assert_eq!(saved.config_digest.len(), 64);

    let plot = read(dir.path(), "plot.gp");
    assert!(plot.contains("'opa3.csv'"));
}

#[test]
fn rerun_is_byte_identical() {
    let cfg = RunConfig::from_toml(SMALL).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    execute(&cfg, Mode::Full, a.path()).unwrap();
    // replay from the saved manifest with a different worker count
    let manifest: RunManifest = serde_json::from_str(&read(a.path(), "manifest.json")).unwrap();
    let mut replay = manifest.config;
    replay.threads = 3;
    execute(&replay, Mode::Full, b.path()).unwrap();
    for f in ["rs-minmax_n2.csv", "apaf_n2.csv", "opa3.csv", "analytic.csv"] {
        assert_eq!(read(a.path(), f), read(b.path(), f), "{f} differs");
    }
}

#[test]
fn analytic_mode_skips_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig::from_toml(SMALL).unwrap();
    execute(&cfg, Mode::AnalyticOnly, dir.path()).unwrap();
    assert!(dir.path().join("analytic.csv").is_file());
    assert!(!dir.path().join("apaf_n2.csv").exists());
}

fn config_field(text: &str) -> String {
    match RunConfig::from_toml(text) {
        Err(Error::Config { field, .. }) => field,
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn invalid_configs_name_the_field() {
    let base = "name = \"bad\"\nsnr_db = [0.0]\n";
    assert_eq!(
        config_field(&format!("{base}[[curve]]\nscheme = \"apaf\"\nn_relays = 0\n")),
        "curve[0].n_relays"
    );
    assert_eq!(
        config_field(&format!(
            "{base}[[curve]]\nscheme = \"apaf\"\nn_relays = 1\n[[curve]]\nscheme = \"apaf\"\nn_relays = 2\npower = {{ p_s = 1.0 }}\n"
        )),
        "curve[1].power"
    );
    assert_eq!(
        config_field(&format!(
            "{base}[stopping]\nmin_errors = 10\nmax_frames = 5\n[[curve]]\nscheme = \"apaf\"\nn_relays = 1\n"
        )),
        "stopping.max_frames"
    );
    assert_eq!(
        config_field("name = \"bad\"\n[[curve]]\nscheme = \"apaf\"\nn_relays = 1\n"),
        "snr_db"
    );
    assert_eq!(
        config_field(&format!("{base}constellation = \"qam\"\n[[curve]]\nscheme = \"apaf\"\nn_relays = 1\n")),
        "constellation"
    );
    assert_eq!(
        config_field(&format!(
            "{base}[[curve]]\nscheme = \"apaf\"\nn_relays = 1\n[[curve]]\nscheme = \"apaf\"\nn_relays = 1\n"
        )),
        "curve[1].label"
    );
    assert_eq!(config_field("name = \"empty\"\n"), "curve");

    // unknown keys and schemes are rejected by the parser with the key in the message
    for text in [
        format!("{base}[[curve]]\nscheme = \"apaf\"\nn_relays = 1\nrelays = 3\n"),
        format!("{base}[[curve]]\nscheme = \"best\"\nn_relays = 1\n"),
    ] {
        match RunConfig::from_toml(&text) {
            Err(Error::Toml(e)) => assert!(e.to_string().contains("relays") || e.to_string().contains("best")),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn binary_reproduces_lambda_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_rsaf"))
        .args(["sweep-lambda", "--n-relays", "2", "--n0", "0.1,0.01", "--out-dir"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv = read(dir.path(), "lambda_sweep.csv");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n0,lambda,analytic_ser,frames,errors_s1,errors_s2,ser_avg,ci95,censored_flag"
    );
    assert_eq!(lines.count(), 10);
}

#[test]
fn binary_simulate_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let out = dir.path().join("out");
    let status = Command::new(env!("CARGO_BIN_EXE_rsaf"))
        .args(["simulate", "--seed", "5", "--min-errors", "20", "--max-frames", "50000", "--threads", "2"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest: RunManifest = serde_json::from_str(&read(&out, "manifest.json")).unwrap();
    assert_eq!(manifest.master_seed, 5);
    assert_eq!(manifest.config.stopping.min_errors, 20);

    std::fs::write(&cfg, "name = \"x\"\nsnr_db = [0.0]\n[[curve]]\nscheme = \"apaf\"\nn_relays = 0\n").unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_rsaf"))
        .arg("simulate")
        .arg("--config")
        .arg(&cfg)
        .arg("--out-dir")
        .arg(&out)
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("curve[0].n_relays"));

    let bad = Command::new(env!("CARGO_BIN_EXE_rsaf"))
        .args(["reproduce", "--figure", "9", "--out-dir"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(!bad.status.success());
}
