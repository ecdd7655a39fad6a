use std::fs;

use mop3::experiment::{
    front_file_name, median, read_csv, run_experiment, ExperimentConfig, Method, ProblemSpec, RunRow, SummaryRow,
    REFERENCE_FILE, RUNS_FILE, SUMMARY_FILE,
};
use mop3::metrics::{igd, read_front};

fn config(dir: &std::path::Path, methods: Vec<Method>, problem: ProblemSpec, budget: u64) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(methods, problem, budget, dir);
    c.population = 20;
    c.subproblems = 20;
    c.neighborhood = 5;
    c.record_wall_time = false;
    c
}

#[test]
fn single_run_writes_one_record() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), vec![Method::MoP3Random], ProblemSpec::sized("lotz", 8), 200);
    let records = run_experiment(&c).unwrap();
    assert_eq!(records.len(), 1);
    assert!(dir.path().join(front_file_name(Method::MoP3Random, 0)).exists());
    let rows: Vec<RunRow> = read_csv(&dir.path().join(RUNS_FILE)).unwrap();
    assert_eq!(rows, vec![records[0].row()]);
}

#[test]
fn same_config_gives_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let problem = ProblemSpec::sized("knapsack", 20);
    let mut ca = config(a.path(), Method::ALL.to_vec(), problem, 1500);
    ca.repeats = 2;
    let mut cb = ca.clone();
    cb.out = b.path().to_path_buf();
    run_experiment(&ca).unwrap();
    run_experiment(&cb).unwrap();
    for f in [RUNS_FILE, SUMMARY_FILE, REFERENCE_FILE] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn summary_recomputes_from_persisted_fronts() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(
        dir.path(),
        vec![Method::MoP3Smart, Method::Nsga2],
        ProblemSpec::sized("trap5", 10),
        2000,
    );
    c.repeats = 3;
    run_experiment(&c).unwrap();
    let reference = read_front(&dir.path().join(REFERENCE_FILE), false).unwrap();
    let summary: Vec<SummaryRow> = read_csv(&dir.path().join(SUMMARY_FILE)).unwrap();
    assert_eq!(summary.len(), 2);
    for s in summary {
        let igds: Vec<f64> = (0..3)
            .map(|seed| {
                let f = read_front(&dir.path().join(front_file_name(s.method, seed)), false).unwrap();
                igd(&f, &reference).unwrap()
            })
            .collect();
        assert!((median(&igds) - s.median_igd).abs() < 1e-9, "{}", s.method);
        assert_eq!(s.repeats, 3);
    }
}

#[test]
fn runs_do_not_depend_on_seed_order() {
    let all = tempfile::tempdir().unwrap();
    let one = tempfile::tempdir().unwrap();
    let methods = vec![Method::MoP3Random, Method::Moead];
    let problem = ProblemSpec::sized("zeromax-onemax", 12);
    let mut c = config(all.path(), methods.clone(), problem.clone(), 800);
    c.repeats = 4;
    let full = run_experiment(&c).unwrap();

    let mut single = config(one.path(), methods, problem, 800);
    single.seed = 2;
    let part = run_experiment(&single).unwrap();
    for r in &part {
        let same = full
            .iter()
            .find(|f| f.method == r.method && f.seed == r.seed)
            .unwrap();
        assert_eq!(same.front, r.front);
        assert_eq!(same.ffe_final, r.ffe_final);
        assert_eq!(same.igd, r.igd);
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), vec![], ProblemSpec::sized("lotz", 8), 100);
    assert!(run_experiment(&c).is_err());
    let c = config(dir.path(), vec![Method::Nsga2], ProblemSpec::sized("lotz", 8), 0);
    assert!(run_experiment(&c).is_err());
    let c = config(dir.path(), vec![Method::Nsga2], ProblemSpec::sized("mobcpp", 8), 100);
    assert!(run_experiment(&c).is_err());
}
