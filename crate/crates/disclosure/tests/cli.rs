//! End-to-end checks of the binary: exit codes, artifact layout, and
//! byte-identical reruns for a fixed config and seed.

use std::path::Path;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_disclosure")
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("game.toml");
    std::fs::write(&path, body).unwrap();
    path
}

const TWO_SENDER_CONFIG: &str = r#"
[model]
kind = "uniform"

[game]
kind = "two"
cost = -0.04
senders = [ { p = 0.8, bias = "up" }, { p = 0.6, bias = "up" } ]

[solver]
seed = 11
"#;

const FOUR_SIGNAL_CONFIG: &str = r#"
[model]
kind = "discrete"
prior = 0.5
table = [
  [0.0, 0.3, 0.0],
  [0.3, 0.49, 0.21],
  [0.7, 0.21, 0.49],
  [1.0, 0.0, 0.3],
]

[game]
kind = "two"
cost = 0.36
senders = [ { p = 0.8, bias = "up" }, { p = 0.8, bias = "down" } ]
"#;

#[test]
fn solve_two_sender_writes_report() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), TWO_SENDER_CONFIG);
    let out = tmp.path().join("out");
    let res = Command::new(bin())
        .args(["solve", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let report = std::fs::read_to_string(out.join("equilibrium_report.txt")).unwrap();
    assert!(report.contains("Smallest"));
    assert!(report.contains("dm_welfare"));
    assert!(out.join("posterior_summary.txt").exists());
}

#[test]
fn solve_four_signal_reports_unique_equilibrium_and_welfare() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), FOUR_SIGNAL_CONFIG);
    let out = tmp.path().join("out");
    let res = Command::new(bin())
        .args(["solve", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let report = std::fs::read_to_string(out.join("equilibrium_report.txt")).unwrap();
    assert!(report.contains("-0.19"), "report missing the equilibrium welfare: {report}");
}

#[test]
fn malformed_table_exits_3_with_row_diagnostic() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"
[model]
kind = "discrete"
prior = 0.5
table = [[0.0, 1.0, 0.0], [0.4, 0.5, 0.5]]

[game]
kind = "single"
cost = 0.0
senders = [ { p = 0.8, bias = "up" } ]
"#,
    );
    let res = Command::new(bin())
        .args(["solve", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(tmp.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(3));
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("row 1"), "diagnostic should name the row: {err}");
}

#[test]
fn sweep_is_byte_identical_across_reruns_and_threads() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"
[model]
kind = "uniform"

[game]
kind = "two"
cost = 0.04
senders = [ { p = 0.8, bias = "up" }, { p = 0.6, bias = "up" } ]

[solver]
seed = 5

[[sweep.axis]]
param = "p1"
from = 0.4
to = 0.8
steps = 4
"#,
    );
    let run = |out: &Path, threads: &str| {
        let res = Command::new(bin())
            .args(["sweep", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(out)
            .args(["--threads", threads])
            .output()
            .unwrap();
        assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
        std::fs::read(out.join("sweep.csv")).unwrap()
    };
    let a = run(&tmp.path().join("a"), "1");
    let b = run(&tmp.path().join("b"), "4");
    assert_eq!(a, b, "sweep output depends on thread count or rerun");
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("# monotonicity"));
    assert!(text.starts_with("# seed = 5"));
}

#[test]
fn curves_have_prior_endpoints_and_diagonal() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), TWO_SENDER_CONFIG);
    let out = tmp.path().join("out");
    let res = Command::new(bin())
        .args(["curves", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(out.join("curves.csv")).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('s'))
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 512);
    // Nondisclosure-belief endpoints sit at the prior.
    assert!((rows[0][1] - 0.5).abs() < 1e-9);
    assert!((rows[511][1] - 0.5).abs() < 1e-9);
    // The more informative opponent pulls U toward the diagonal.
    let mid = &rows[340];
    let (s, u, u_more) = (mid[0], mid[2], mid[3]);
    assert!((u_more - s).abs() <= (u - s).abs() + 1e-9);
}

#[test]
fn examples_command_passes_and_echoes_seeds() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), TWO_SENDER_CONFIG);
    let res = Command::new(bin())
        .args(["examples", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(tmp.path().join("out"))
        .env("DISCLOSURE_SEED", "99")
        .output()
        .unwrap();
    assert!(res.status.success());
    let text = String::from_utf8_lossy(&res.stdout);
    assert!(text.contains("# seed = 99"), "env override ignored: {text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 9);
    assert!(!text.contains("FAIL"));
}

#[test]
fn solve_covers_every_game_kind() {
    let configs = [
        (
            "sequential",
            r#"
[model]
kind = "uniform"

[game]
kind = "sequential"
cost = 0.03
senders = [ { p = 0.8, bias = "up" }, { p = 0.6, bias = "up" } ]
"#,
        ),
        (
            "correlated",
            r#"
[model]
kind = "uniform"

[game]
kind = "correlated"
cost = 0.0
senders = [ { p = 0.6, bias = "up" }, { p = 0.7, bias = "down" } ]
"#,
        ),
        (
            "many",
            r#"
[model]
kind = "uniform"

[game]
kind = "many"
cost = -0.03
senders = [ { p = 0.8, bias = "up" }, { p = 0.6, bias = "up" }, { p = 0.5, bias = "up" } ]
"#,
        ),
        (
            "uncertain_bias",
            r#"
[model]
kind = "beta"
rho = 1.2

[game]
kind = "uncertain_bias"
cost = 0.04
lambda = 0.5
senders = [ { p = 0.8, bias = "up" } ]
"#,
        ),
        (
            "curve_model",
            r#"
[model]
kind = "curve"
curve = [
  [0.0, 0.9], [0.1, 0.756], [0.2, 0.644], [0.3, 0.564], [0.4, 0.516],
  [0.5, 0.5], [0.6, 0.516], [0.7, 0.564], [0.8, 0.644], [0.9, 0.756], [1.0, 0.9],
]

[game]
kind = "single"
cost = 0.12
senders = [ { p = 0.9, bias = "up" } ]
"#,
        ),
    ];
    for (name, body) in configs {
        let tmp = tempfile::tempdir().unwrap();
        let cfg = write_config(tmp.path(), body);
        let out = tmp.path().join("out");
        let res = Command::new(bin())
            .args(["solve", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap();
        assert!(
            res.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&res.stderr)
        );
        assert!(out.join("equilibrium_report.txt").exists(), "{name} wrote no report");
        assert!(out.join("posterior_summary.txt").exists(), "{name} wrote no summary");
    }
}

#[test]
fn simulate_reports_seeded_moments() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"
[model]
kind = "uniform"

[game]
kind = "single"
cost = 0.0
senders = [ { p = 0.8, bias = "up" } ]

[solver]
seed = 21
mc_draws = 200000
"#,
    );
    let res = Command::new(bin())
        .args(["simulate", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(tmp.path().join("out"))
        .output()
        .unwrap();
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let text = String::from_utf8_lossy(&res.stdout);
    assert!(text.contains("seed = 21"));
    assert!(text.contains("mean posterior"));
}
