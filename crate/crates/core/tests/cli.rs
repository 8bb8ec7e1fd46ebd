//! End-to-end behaviour of the `mpa-audit` binary and the runner commands.

use std::path::Path;
use std::process::Command;

use mpa_audit::runner::{
    cmd_figures, cmd_run, parse_config, LoadOptions, OutputOptions, RunConfig, RunError,
    REPORT_TIMESTAMP_KEY,
};
use mpa_audit::Error;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mpa-audit"))
}

fn run_in(dir: &Path, extra: &[&str]) -> std::process::Output {
    bin()
        .arg("run")
        .arg("--out")
        .arg(dir)
        .args(extra)
        .output()
        .expect("binary runs")
}

fn without_timestamp(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.contains(REPORT_TIMESTAMP_KEY))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn default_run_certifies_the_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["--svg"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["counterexample_certified"], true);
    assert_eq!(report["relation"]["verdict"], "not-coordinate-wise");
    let premises = report["premises"].as_array().unwrap();
    assert_eq!(premises.len(), 4);
    assert!(premises.iter().all(|p| p["status"] == "pass"));
    assert_eq!(report["parameters"]["mpa"]["a"], 3.6);
    assert_eq!(report["parameters"]["mpa"]["c"], 0.9);
    assert_eq!(
        report["parameters"]["mixing"],
        serde_json::json!([[1.0, 0.5], [0.0, 1.0]])
    );
    assert_eq!(report["seed"], 42);
    assert!(report["uniformity"]["p_value"].as_f64().unwrap() > 0.001);

    for stem in ["X", "Z", "Zprime"] {
        let csv = std::fs::read_to_string(dir.path().join(format!("{stem}.csv"))).unwrap();
        assert_eq!(csv.lines().count(), 100_001, "{stem}");
        let header = if stem == "X" { "x1,x2" } else { "z1,z2" };
        assert_eq!(csv.lines().next(), Some(header));
        let svg = std::fs::read_to_string(dir.path().join(format!("{stem}.svg"))).unwrap();
        assert_eq!(svg.matches("<circle").count(), 100_000);
    }
    assert!(dir.path().join("swirl_profile.csv").exists());
}

#[test]
fn identical_configs_give_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert_eq!(run_in(d.path(), &["--seed", "5"]).status.code(), Some(0));
    }
    for file in ["X.csv", "Z.csv", "Zprime.csv", "swirl_profile.csv"] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert!(x == y, "{file} differs");
    }
    let ra = std::fs::read_to_string(a.path().join("report.json")).unwrap();
    let rb = std::fs::read_to_string(b.path().join("report.json")).unwrap();
    // Only the timestamp line and the output directory may differ.
    let strip =
        |s: &str, dir: &Path| without_timestamp(s).replace(&dir.display().to_string(), "<out>");
    assert_eq!(strip(&ra, a.path()), strip(&rb, b.path()));
    assert_eq!(
        ra.lines().nth(1).map(|l| l.contains(REPORT_TIMESTAMP_KEY)),
        Some(true)
    );
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "seed = 1\nn = 20000\n").unwrap();
    let out = bin()
        .args(["run", "--seed", "9", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["seed"], 9);
    assert_eq!(report["parameters"]["n"], 20000);
}

#[test]
fn degenerate_control_exits_with_its_category() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("control.cfg");
    std::fs::write(&cfg, "a = 0\nmixing = 1, 0, 0, 1\n").unwrap();
    let out = bin()
        .args(["run", "--allow-degenerate", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(11));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate-coordinate-wise"));
    let report = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(report.contains("\"counterexample_certified\": false"));

    // Without the hidden flag the same file is a configuration error.
    let out = bin()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a ≠ 0"));
}

#[test]
fn invalid_cutoff_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "c = 1.5\n").unwrap();
    let out = bin()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("c ∈ (0,1)"));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "not a directory").unwrap();
    let out = run_in(&blocker.join("sub"), &[]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("io"));
}

#[test]
fn figures_need_at_least_one_point() {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig {
        n: 0,
        output_dir: dir.path().to_path_buf(),
        ..RunConfig::default()
    };
    assert!(matches!(
        cmd_figures(&config, &OutputOptions::default()),
        Err(RunError::Audit(Error::EmptyDataset))
    ));
}

#[test]
fn figures_reproduce_the_swirl() {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig {
        output_dir: dir.path().to_path_buf(),
        ..parse_config("", LoadOptions::default()).unwrap()
    };
    let bundle = cmd_figures(&config, &OutputOptions::default()).unwrap();
    let at_half = bundle.swirl_profile.bin_containing(0.5).unwrap();
    assert!(
        (at_half.mean_displacement - (-1.44)).abs() < 0.02,
        "{at_half:?}"
    );
    let outside = bundle.swirl_profile.bin_containing(0.95).unwrap();
    assert!(outside.mean_displacement.abs() < 1e-6, "{outside:?}");
    assert!(bundle.svgs.is_empty());

    let out = bin()
        .arg("figures")
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 4);
}

#[test]
fn external_audit_of_identical_files_is_coordinate_wise() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["--seed", "3"]).status.code(), Some(0));
    let z = dir.path().join("Z.csv");
    let out = bin()
        .arg("audit-external")
        .arg(&z)
        .arg(&z)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(11),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("external_report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["relation"]["verdict"], "coordinate-wise");
    assert_eq!(report["premises"][0]["status"], "not-applicable");
    assert_eq!(report["premises"][1]["status"], "not-applicable");
}

#[test]
fn external_audit_of_run_outputs_is_not_coordinate_wise() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &[]).status.code(), Some(0));
    let out = bin()
        .arg("audit-external")
        .arg(dir.path().join("Z.csv"))
        .arg(dir.path().join("Zprime.csv"))
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("NotCoordinateWise"));
}

#[test]
fn external_audit_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    let wide = dir.path().join("wide.csv");
    let short = dir.path().join("short.csv");
    std::fs::write(&good, "z1,z2\n0.1,0.2\n0.3,0.4\n").unwrap();
    std::fs::write(&wide, "z1,z2\n0.1,0.2,0.3\n0.3,0.4,0.5\n").unwrap();
    std::fs::write(&short, "z1,z2\n0.1,0.2\n").unwrap();

    let run = |a: &Path, b: &Path| {
        bin()
            .arg("audit-external")
            .arg(a)
            .arg(b)
            .arg("--out")
            .arg(dir.path())
            .output()
            .unwrap()
    };
    let out = run(&good, &wide);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 2 columns"));
    let out = run(&good, &short);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row counts"));
}

#[test]
fn library_run_matches_exit_contract() {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig {
        n: 20_000,
        output_dir: dir.path().to_path_buf(),
        ..RunConfig::default()
    };
    let summary = cmd_run(&config, &OutputOptions::default()).unwrap();
    assert_eq!(
        summary.exit_category().code() == 0,
        summary.report.counterexample_certified()
    );
    assert_eq!(summary.report.parameters.n, config.n);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
