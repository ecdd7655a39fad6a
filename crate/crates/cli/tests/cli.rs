use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mop3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mop3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = mop3(args);
    assert!(
        out.status.success(),
        "mop3 {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_fronts_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zm");
    let stdout = ok(&[
        "run",
        "--problem",
        "zeromax-onemax",
        "--size",
        "12",
        "--method",
        "mo-p3-random,nsga2",
        "--budget",
        "2000",
        "--repeats",
        "2",
        "--population",
        "20",
        "--out",
        path(&out),
    ]);
    assert_eq!(stdout.lines().filter(|l| l.contains("seed")).count(), 4);
    for f in [
        "front_mo-p3-random_0.txt",
        "front_mo-p3-random_1.txt",
        "front_nsga2_0.txt",
        "front_nsga2_1.txt",
        "reference.txt",
        "runs.csv",
        "summary.csv",
        "plot_igd.csv",
        "plot_ffe.csv",
    ] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    // the analytic reference has l + 1 points
    assert_eq!(fs::read_to_string(out.join("reference.txt")).unwrap().lines().count(), 13);
}

#[test]
fn run_without_wall_time_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        ok(&[
            "run",
            "--problem",
            "maxcut",
            "--size",
            "10",
            "--method",
            "moead",
            "--method",
            "mo-p3-smart",
            "--budget",
            "1500",
            "--subproblems",
            "20",
            "--neighborhood",
            "5",
            "--no-wall-time",
            "--out",
            path(&out),
        ]);
        fs::read(out.join("runs.csv")).unwrap()
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    let out = dir.path().join("trap");
    fs::write(
        &cfg,
        format!(
            "methods = [\"mo-p3-smart\"]\nbudget = 100000\nout = {:?}\n\n[problem]\nname = \"trap5\"\nsize = 10\n",
            path(&out)
        ),
    )
    .unwrap();
    ok(&["run", "--config", path(&cfg), "--budget", "3000", "--seed", "5"]);
    assert!(out.join("front_mo-p3-smart_5.txt").exists());
    let runs = fs::read_to_string(out.join("runs.csv")).unwrap();
    assert_eq!(runs.lines().count(), 2);
}

#[test]
fn generated_instances_run() {
    let dir = tempfile::tempdir().unwrap();
    let maxcut = dir.path().join("g.txt");
    let knap = dir.path().join("k.txt");
    let plan = dir.path().join("p.toml");
    ok(&["generate", "maxcut", "--vertices", "8", "--seed", "3", "--out", path(&maxcut)]);
    ok(&["generate", "knapsack", "--items", "10", "--out", path(&knap)]);
    ok(&[
        "generate",
        "mobcpp",
        "--resources",
        "2",
        "--commodities",
        "3",
        "--recipes",
        "5",
        "--out",
        path(&plan),
    ]);
    for (name, file) in [("maxcut", &maxcut), ("knapsack", &knap), ("mobcpp", &plan)] {
        let out = dir.path().join(name);
        ok(&[
            "run",
            "--problem",
            name,
            "--instance",
            path(file),
            "--method",
            "mo-p3-random",
            "--budget",
            "500",
            "--out",
            path(&out),
        ]);
        assert!(out.join("summary.csv").exists());
    }
}

#[test]
fn igd_of_hand_fronts() {
    let dir = tempfile::tempdir().unwrap();
    let front = dir.path().join("s.txt");
    let reference = dir.path().join("r.txt");
    fs::write(&front, "0 2\n").unwrap();
    fs::write(&reference, "0 2\n2 0\n").unwrap();
    let stdout = ok(&["igd", "--front", path(&front), "--reference", path(&reference)]);
    let igd: f64 = stdout.lines().next().unwrap().strip_prefix("igd ").unwrap().parse().unwrap();
    assert!((igd - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(stdout.lines().nth(1), Some("gd 0"));

    fs::write(&front, "1 1\n2 2\n").unwrap();
    assert!(!mop3(&["igd", "--front", path(&front), "--reference", path(&reference)]).status.success());
    ok(&["igd", "--front", path(&front), "--reference", path(&reference), "--raw"]);
}

#[test]
fn plot_merges_directories() {
    let dir = tempfile::tempdir().unwrap();
    let mut dirs = Vec::new();
    for size in ["10", "15"] {
        let out = dir.path().join(size);
        ok(&[
            "run",
            "--problem",
            "lotz",
            "--size",
            size,
            "--method",
            "mo-p3-random,mo-p3-smart",
            "--budget",
            "3000",
            "--out",
            path(&out),
        ]);
        dirs.push(out);
    }
    let merged = dir.path().join("plots");
    ok(&["plot", path(&dirs[0]), path(&dirs[1]), "--out", path(&merged)]);
    let ratio = fs::read_to_string(merged.join("plot_ffe_ratio.csv")).unwrap();
    assert_eq!(ratio.lines().count(), 3);
    let igd = fs::read_to_string(merged.join("plot_igd.csv")).unwrap();
    assert_eq!(igd.lines().count(), 5);
}

#[test]
fn bad_input_fails() {
    assert!(!mop3(&["run", "--problem", "nope", "--size", "5", "--budget", "10"]).status.success());
    assert!(!mop3(&["run", "--problem", "lotz", "--method", "p3", "--size", "5", "--budget", "10"])
        .status
        .success());
    assert!(!mop3(&["run", "--problem", "mobcpp", "--budget", "10"]).status.success());
    assert!(!mop3(&["run", "--problem", "lotz", "--size", "5"]).status.success());
}
