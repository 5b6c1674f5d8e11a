use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ctb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctb-burgers"))
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

fn dir_arg(d: &Path) -> String {
    d.to_str().unwrap().to_string()
}

#[test]
fn table2_configuration_prints_table() {
    let tmp = TempDir::new().unwrap();
    let out = ctb(&[
        "--problem", "sine", "--lambda", "1", "--n-cells", "40", "--dt", "0.0001",
        "--t-end", "3.0", "--sample-times", "0.4,0.6,0.8,1.0,3.0",
        "--sample-xs", "0.25,0.5,0.75", "--outputs", "table",
        "--output-dir", &dir_arg(tmp.path()),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    let first: Vec<f64> = lines[1].split_whitespace().map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[..3], [0.25, 0.4, 0.01355]);
    assert!((first[3] - 0.01356).abs() <= 1.000001e-5);
    assert_eq!(fs::read_to_string(tmp.path().join("table.txt")).unwrap(), text);
}

#[test]
fn zero_end_time_prints_initial_profile() {
    let tmp = TempDir::new().unwrap();
    let out = ctb(&["--t-end", "0", "--n-cells", "4", "--output-dir", &dir_arg(tmp.path())]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows: Vec<Vec<String>> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for (i, r) in rows.iter().enumerate() {
        let x = i as f64 / 4.0;
        assert_eq!(r[1], "0.000");
        let expect = format!("{:.5}", (std::f64::consts::PI * x).sin());
        assert_eq!(r[2], expect);
        assert_eq!(r[3], expect);
    }
}

#[test]
fn identical_configs_write_identical_csv() {
    let runs: Vec<TempDir> = (0..2).map(|_| TempDir::new().unwrap()).collect();
    for d in &runs {
        let out = ctb(&[
            "run", "--lambda", "0.1", "--n-cells", "20", "--dt", "0.001", "--t-end", "0.2",
            "--sample-times", "0.1,0.2", "--outputs", "csv,plotdata",
            "--output-dir", &dir_arg(d.path()),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    for name in ["solution_t0.100000.csv", "solution_t0.200000.csv", "plot_t0.200000.csv"] {
        let a = fs::read(runs[0].path().join(name)).unwrap();
        let b = fs::read(runs[1].path().join(name)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{name}");
    }
    let csv = fs::read_to_string(runs[0].path().join("plot_t0.200000.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,t,numerical,exact,abs_error"));
    assert_eq!(lines.count(), 21);
}

#[test]
fn traveling_plotdata_has_one_file_per_time() {
    let tmp = TempDir::new().unwrap();
    let out = ctb(&[
        "--problem", "traveling", "--lambda", "0.005", "--dt", "0.001", "--n-cells", "36",
        "--t-end", "0.4", "--sample-times", "0.2,0.4", "--outputs", "plotdata",
        "--output-dir", &dir_arg(tmp.path()),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    for t in ["0.200000", "0.400000"] {
        let csv = fs::read_to_string(tmp.path().join(format!("plot_t{t}.csv"))).unwrap();
        let rows: Vec<Vec<f64>> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 37);
        assert!((rows[0][2] - 1.0).abs() < 1e-9 && (rows[36][2] - 0.2).abs() < 1e-9);
        for r in &rows {
            assert!((r[4] - (r[2] - r[3]).abs()).abs() < 1e-9);
        }
    }
}

#[test]
fn flags_override_config_file() {
    let tmp = TempDir::new().unwrap();
    let cfg = tmp.path().join("run.cfg");
    fs::write(
        &cfg,
        "# sine run\nlambda = 0.1\nn_cells = 40\ndt = 0.0001\nt-end = 0.4\nsample-xs = 0.25\n",
    )
    .unwrap();
    let base = ["--config", cfg.to_str().unwrap(), "--output-dir"];
    let from_file = ctb(&[&base[..], &[&dir_arg(&tmp.path().join("a"))]].concat());
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert!(stdout(&from_file).contains("0.30892"));
    let overridden = ctb(&[&base[..], &[&dir_arg(&tmp.path().join("b")), "--lambda", "1"]].concat());
    assert!(overridden.status.success());
    assert!(stdout(&overridden).contains("0.01355"));
}

#[test]
fn configuration_errors_exit_with_one_and_name_the_field() {
    let tmp = TempDir::new().unwrap();
    let d = dir_arg(tmp.path());
    let cases: [(&[&str], &str); 5] = [
        (&["--lambda", "-1"], "lambda"),
        (&["--dt", "0"], "dt"),
        (&["--t-end", "-0.5"], "t-end"),
        (&["--n-cells", "2"], "n-cells"),
        (&["--sample-times", "0.00005", "--t-end", "0.01"], "0.00005"),
    ];
    for (args, field) in cases {
        let out = ctb(&[args, &["--output-dir", &d]].concat());
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).contains(field), "{args:?}: {}", stderr(&out));
    }
    let cfg = tmp.path().join("bad.cfg");
    fs::write(&cfg, "viscosity = 1\n").unwrap();
    let out = ctb(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("viscosity"));
}

#[test]
fn unwritable_output_exits_with_two() {
    let tmp = TempDir::new().unwrap();
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = ctb(&["--n-cells", "4", "--t-end", "0", "--output-dir", &dir_arg(&blocker)]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn reproduce_table5_reports_matching_step() {
    let tmp = TempDir::new().unwrap();
    let out = ctb(&["reproduce", "table5", "--output-dir", &dir_arg(tmp.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("note: matching dt: [0.01]"), "{text}");
    assert!(text.contains("table5: PASS"));
    assert!(tmp.path().join("table5.csv").exists());
    assert!(tmp.path().join("table5_report.txt").exists());
}
