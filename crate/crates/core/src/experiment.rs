//! Seeded experiment grids: (method × seed) runs on one problem, front files,
//! per-run and summary tables, and plot-ready series.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baselines::{run_moead, run_nsga2, MoeadConfig, Nsga2Config};
use crate::engine::{ElitistArchive, MoP3, MoP3Config, WeightStrategy};
use crate::error::{Error, Result};
use crate::gateway::Problem;
use crate::metrics::{igd, merge_pseudo_optimal, read_front, write_front, Front};
use crate::problems::{
    brute_force_front, KnapsackInstance, Lotz, MaxcutInstance, Mobcpp, MobcppInstance, Trap5Pair, ZeromaxOnemax,
    MAX_ENUMERATION_LEN,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "mo-p3-random")]
    MoP3Random,
    #[serde(rename = "mo-p3-smart")]
    MoP3Smart,
    #[serde(rename = "nsga2")]
    Nsga2,
    #[serde(rename = "moead")]
    Moead,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::MoP3Random, Method::MoP3Smart, Method::Nsga2, Method::Moead];

    pub fn id(self) -> &'static str {
        match self {
            Method::MoP3Random => "mo-p3-random",
            Method::MoP3Smart => "mo-p3-smart",
            Method::Nsga2 => "nsga2",
            Method::Moead => "moead",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown method {s:?}")))
    }
}

/// Problem by name, with a size for the synthetic problems or an instance
/// file for the instance-based ones. Maxcut and knapsack without a file are
/// generated from `size` and `instance_seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub name: String,
    #[serde(default)]
    pub size: Option<usize>,
    #[serde(default)]
    pub instance: Option<PathBuf>,
    #[serde(default)]
    pub instance_seed: u64,
}

impl ProblemSpec {
    pub fn sized(name: &str, size: usize) -> Self {
        ProblemSpec {
            name: name.to_string(),
            size: Some(size),
            instance: None,
            instance_seed: 0,
        }
    }

    pub fn from_file(name: &str, path: impl Into<PathBuf>) -> Self {
        ProblemSpec {
            name: name.to_string(),
            size: None,
            instance: Some(path.into()),
            instance_seed: 0,
        }
    }
}

pub const PROBLEM_NAMES: [&str; 6] = ["zeromax-onemax", "trap5", "lotz", "maxcut", "knapsack", "mobcpp"];

/// Edge probability and weight range of generated maxcut graphs.
pub const MAXCUT_DENSITY: f64 = 0.5;
pub const MAXCUT_MAX_WEIGHT: u32 = 10;

pub fn build_problem(spec: &ProblemSpec) -> Result<Box<dyn Problem>> {
    let size = || {
        spec.size
            .ok_or_else(|| Error::InvalidConfig(format!("problem {} needs a size", spec.name)))
    };
    Ok(match spec.name.as_str() {
        "zeromax-onemax" => Box::new(ZeromaxOnemax::new(size()?)),
        "trap5" => Box::new(Trap5Pair::new(size()?)?),
        "lotz" => Box::new(Lotz::new(size()?)?),
        "maxcut" => match &spec.instance {
            Some(p) => Box::new(MaxcutInstance::load(p)?),
            None => Box::new(MaxcutInstance::generate(
                size()?,
                MAXCUT_DENSITY,
                MAXCUT_MAX_WEIGHT,
                spec.instance_seed,
            )?),
        },
        "knapsack" => match &spec.instance {
            Some(p) => Box::new(KnapsackInstance::load(p)?),
            None => Box::new(KnapsackInstance::generate(size()?, 2, spec.instance_seed)?),
        },
        "mobcpp" => match &spec.instance {
            Some(p) => Box::new(Mobcpp::new(MobcppInstance::load(p)?)?),
            None => return Err(Error::InvalidConfig("mobcpp needs an instance file".into())),
        },
        other => return Err(Error::InvalidConfig(format!("unknown problem {other:?}"))),
    })
}

fn default_repeats() -> u64 {
    1
}

fn default_population() -> usize {
    400
}

fn default_neighborhood() -> usize {
    20
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub methods: Vec<Method>,
    pub problem: ProblemSpec,
    pub budget: u64,
    #[serde(default = "default_repeats")]
    pub repeats: u64,
    #[serde(default)]
    pub seed: u64,
    pub out: PathBuf,
    /// Reference front file; `None` picks one automatically.
    #[serde(default)]
    pub reference: Option<PathBuf>,
    /// Archive grid widths for MO-P3; empty for an exact archive.
    #[serde(default)]
    pub epsilon: Vec<f64>,
    /// NSGA-II population size.
    #[serde(default = "default_population")]
    pub population: usize,
    /// MOEA/D subproblem count.
    #[serde(default = "default_population")]
    pub subproblems: usize,
    #[serde(default = "default_neighborhood")]
    pub neighborhood: usize,
    /// When false, wall times are written as 0 so outputs are byte-stable.
    #[serde(default = "default_true")]
    pub record_wall_time: bool,
}

impl ExperimentConfig {
    pub fn new(methods: Vec<Method>, problem: ProblemSpec, budget: u64, out: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            methods,
            problem,
            budget,
            repeats: 1,
            seed: 0,
            out: out.into(),
            reference: None,
            epsilon: Vec::new(),
            population: default_population(),
            subproblems: default_population(),
            neighborhood: default_neighborhood(),
            record_wall_time: true,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no methods configured".into()));
        }
        if self.repeats == 0 {
            return Err(Error::InvalidConfig("repeats must be at least 1".into()));
        }
        if self.budget == 0 {
            return Err(Error::InvalidConfig("budget must be at least 1".into()));
        }
        Ok(())
    }

    fn nsga2(&self) -> Nsga2Config {
        Nsga2Config {
            population: self.population,
            ..Nsga2Config::default()
        }
    }

    fn moead(&self) -> MoeadConfig {
        MoeadConfig {
            subproblems: self.subproblems,
            neighborhood: self.neighborhood,
            ..MoeadConfig::default()
        }
    }
}

/// Outcome of one optimizer run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub front: Front,
    /// Evaluation index at which the last member of the front was found.
    pub ffe_final: u64,
}

/// One run of `method` with `seed`. Depends on nothing else, so runs can
/// execute in any order.
pub fn run_method(method: Method, problem: &dyn Problem, config: &ExperimentConfig, seed: u64) -> Result<RunOutput> {
    let archive: ElitistArchive = match method {
        Method::MoP3Random | Method::MoP3Smart => {
            let strategy = if method == Method::MoP3Random {
                WeightStrategy::Random
            } else {
                WeightStrategy::Smart
            };
            let mut mo = MoP3Config::new(strategy);
            mo.epsilon = config.epsilon.clone();
            let mut opt = MoP3::new(problem, config.budget, mo, seed)?;
            opt.run()?;
            opt.into_archive()
        }
        Method::Nsga2 => run_nsga2(problem, &config.nsga2(), config.budget, seed)?,
        Method::Moead => run_moead(problem, &config.moead(), config.budget, seed)?,
    };
    Ok(RunOutput {
        front: archive.front(),
        ffe_final: archive.ffe_to_final(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub method: Method,
    pub problem: String,
    pub l: usize,
    pub seed: u64,
    pub front: Front,
    pub ffe_final: u64,
    pub igd: f64,
    pub wall_ms: u64,
}

/// A [`RunRecord`] without its front, as stored in `runs.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub method: Method,
    pub problem: String,
    pub l: usize,
    pub seed: u64,
    pub igd: f64,
    pub ffe_final: u64,
    pub wall_ms: u64,
    pub front_size: usize,
}

impl RunRecord {
    pub fn row(&self) -> RunRow {
        RunRow {
            method: self.method,
            problem: self.problem.clone(),
            l: self.l,
            seed: self.seed,
            igd: self.igd,
            ffe_final: self.ffe_final,
            wall_ms: self.wall_ms,
            front_size: self.front.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub method: Method,
    pub problem: String,
    pub l: usize,
    pub repeats: usize,
    pub median_igd: f64,
    pub iqr_igd: f64,
    pub median_ffe_final: f64,
    pub median_wall_ms: f64,
}

pub fn front_file_name(method: Method, seed: u64) -> String {
    format!("front_{}_{seed}.txt", method.id())
}

pub const REFERENCE_FILE: &str = "reference.txt";
pub const RUNS_FILE: &str = "runs.csv";
pub const SUMMARY_FILE: &str = "summary.csv";

/// Analytic front when the problem has one, enumeration for short
/// genotypes, else the non-dominated merge of `fronts`.
pub fn auto_reference(problem: &dyn Problem, fronts: &[Front]) -> Result<Front> {
    if let Some(f) = problem.optimal_front() {
        return Ok(f);
    }
    if problem.genotype_len() <= MAX_ENUMERATION_LEN {
        return brute_force_front(problem);
    }
    merge_pseudo_optimal(fronts)
}

/// Runs every configured method for seeds `seed..seed + repeats`, writes
/// front files, the reference front, `runs.csv`, `summary.csv` and plot
/// series into the output directory.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    config.validate()?;
    let problem = build_problem(&config.problem)?;
    let problem: &dyn Problem = &*problem;
    fs::create_dir_all(&config.out)?;

    let mut runs = Vec::new();
    for &method in &config.methods {
        for seed in config.seed..config.seed + config.repeats {
            let start = Instant::now();
            let out = run_method(method, problem, config, seed)?;
            let wall_ms = if config.record_wall_time {
                start.elapsed().as_millis() as u64
            } else {
                0
            };
            write_front(&config.out.join(front_file_name(method, seed)), &out.front)?;
            runs.push((method, seed, out, wall_ms));
        }
    }

    let reference = match &config.reference {
        Some(path) => read_front(path, false)?,
        None => {
            let fronts: Vec<Front> = runs.iter().map(|r| r.2.front.clone()).collect();
            auto_reference(problem, &fronts)?
        }
    };
    write_front(&config.out.join(REFERENCE_FILE), &reference)?;

    let mut records = Vec::with_capacity(runs.len());
    for (method, seed, out, wall_ms) in runs {
        records.push(RunRecord {
            method,
            problem: problem.name(),
            l: problem.genotype_len(),
            seed,
            igd: igd(&out.front, &reference)?,
            front: out.front,
            ffe_final: out.ffe_final,
            wall_ms,
        });
    }
    let rows: Vec<RunRow> = records.iter().map(RunRecord::row).collect();
    write_csv(&config.out.join(RUNS_FILE), &rows)?;
    write_csv(&config.out.join(SUMMARY_FILE), &summarize(&rows))?;
    emit_plot_data(&rows, &config.out)?;
    Ok(records)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            line: 0,
            message: format!("{other:?}"),
        },
    }
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_error)?;
    r.deserialize().map(|row| row.map_err(csv_error)).collect()
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    quantile(&v, 0.5)
}

pub fn iqr(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    quantile(&v, 0.75) - quantile(&v, 0.25)
}

type GroupKey = (Method, String, usize);

fn group(rows: &[RunRow]) -> BTreeMap<GroupKey, Vec<&RunRow>> {
    let mut groups: BTreeMap<GroupKey, Vec<&RunRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.method, r.problem.clone(), r.l)).or_default().push(r);
    }
    groups
}

/// One row per (method, problem, length), ordered by that key.
pub fn summarize(rows: &[RunRow]) -> Vec<SummaryRow> {
    group(rows)
        .into_iter()
        .map(|((method, problem, l), g)| {
            let igds: Vec<f64> = g.iter().map(|r| r.igd).collect();
            let ffes: Vec<f64> = g.iter().map(|r| r.ffe_final as f64).collect();
            let walls: Vec<f64> = g.iter().map(|r| r.wall_ms as f64).collect();
            SummaryRow {
                method,
                problem,
                l,
                repeats: g.len(),
                median_igd: median(&igds),
                iqr_igd: iqr(&igds),
                median_ffe_final: median(&ffes),
                median_wall_ms: median(&walls),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub method: Method,
    pub problem: String,
    pub l: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioPoint {
    pub problem: String,
    pub l: usize,
    pub ratio: f64,
}

pub const PLOT_IGD_FILE: &str = "plot_igd.csv";
pub const PLOT_FFE_FILE: &str = "plot_ffe.csv";
pub const PLOT_RATIO_FILE: &str = "plot_ffe_ratio.csv";

/// Writes median IGD and median FFE-to-final series (x = genotype length)
/// per method, plus the MO-P3 Random/Smart FFE ratio per length when both
/// variants are present. Returns the written paths.
pub fn emit_plot_data(rows: &[RunRow], dir: &Path) -> Result<Vec<PathBuf>> {
    if rows.is_empty() {
        return Err(Error::InvalidConfig("no run records to plot".into()));
    }
    fs::create_dir_all(dir)?;
    let summary = summarize(rows);
    let series = |value: fn(&SummaryRow) -> f64| -> Vec<SeriesPoint> {
        summary
            .iter()
            .map(|s| SeriesPoint {
                method: s.method,
                problem: s.problem.clone(),
                l: s.l,
                value: value(s),
            })
            .collect()
    };
    let mut written = vec![dir.join(PLOT_IGD_FILE), dir.join(PLOT_FFE_FILE)];
    write_csv(&written[0], &series(|s| s.median_igd))?;
    write_csv(&written[1], &series(|s| s.median_ffe_final))?;

    let ffe: BTreeMap<GroupKey, f64> = summary
        .iter()
        .map(|s| ((s.method, s.problem.clone(), s.l), s.median_ffe_final))
        .collect();
    let ratios: Vec<RatioPoint> = ffe
        .iter()
        .filter(|(k, _)| k.0 == Method::MoP3Random)
        .filter_map(|((_, problem, l), &random)| {
            let smart = *ffe.get(&(Method::MoP3Smart, problem.clone(), *l))?;
            (smart > 0.0).then(|| RatioPoint {
                problem: problem.clone(),
                l: *l,
                ratio: random / smart,
            })
        })
        .collect();
    if !ratios.is_empty() {
        written.push(dir.join(PLOT_RATIO_FILE));
        write_csv(&written[2], &ratios)?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(method: Method, l: usize, seed: u64, igd: f64, ffe: u64) -> RunRow {
        RunRow {
            method,
            problem: "trap5".into(),
            l,
            seed,
            igd,
            ffe_final: ffe,
            wall_ms: 0,
            front_size: 1,
        }
    }

    #[test]
    fn method_ids_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.id().parse::<Method>().unwrap(), m);
        }
        assert!("p3".parse::<Method>().is_err());
    }

    #[test]
    fn quantiles_by_hand() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(&[7.0]), 7.0);
        // quartiles of 1..=5 are 2 and 4
        assert_eq!(iqr(&[5.0, 1.0, 4.0, 2.0, 3.0]), 2.0);
        assert_eq!(iqr(&[1.0]), 0.0);
    }

    #[test]
    fn summary_groups_by_method_and_length() {
        let rows = vec![
            row(Method::Nsga2, 10, 0, 1.0, 100),
            row(Method::MoP3Random, 10, 0, 0.0, 50),
            row(Method::MoP3Random, 10, 1, 2.0, 70),
            row(Method::MoP3Random, 20, 0, 0.5, 90),
        ];
        let s = summarize(&rows);
        assert_eq!(s.len(), 3);
        assert_eq!((s[0].method, s[0].l, s[0].repeats), (Method::MoP3Random, 10, 2));
        assert_eq!(s[0].median_igd, 1.0);
        assert_eq!(s[0].median_ffe_final, 60.0);
        assert_eq!((s[2].method, s[2].l), (Method::Nsga2, 10));
    }

    #[test]
    fn single_method_single_size_gives_one_row_series() {
        let dir = tempfile::tempdir().unwrap();
        let written = emit_plot_data(&[row(Method::Moead, 10, 0, 0.3, 10)], dir.path()).unwrap();
        assert_eq!(written.len(), 2);
        let igd: Vec<SeriesPoint> = read_csv(&written[0]).unwrap();
        assert_eq!(igd.len(), 1);
        assert_eq!(igd[0].value, 0.3);
        assert!(emit_plot_data(&[], dir.path()).is_err());
    }

    #[test]
    fn ratio_series_pairs_the_two_weight_strategies() {
        let dir = tempfile::tempdir().unwrap();
        let mut rows = Vec::new();
        for (i, l) in [10, 20, 30].into_iter().enumerate() {
            rows.push(row(Method::MoP3Random, l, 0, 0.0, 100 * (i as u64 + 1)));
            rows.push(row(Method::MoP3Smart, l, 0, 0.0, 200 * (i as u64 + 1)));
        }
        let written = emit_plot_data(&rows, dir.path()).unwrap();
        let ratios: Vec<RatioPoint> = read_csv(&written[2]).unwrap();
        assert_eq!(ratios.iter().map(|r| r.l).collect::<Vec<_>>(), vec![10, 20, 30]);
        assert!(ratios.iter().all(|r| r.ratio == 0.5));
        let ffe: Vec<SeriesPoint> = read_csv(&written[1]).unwrap();
        let xs: Vec<usize> = ffe.iter().filter(|p| p.method == Method::MoP3Random).map(|p| p.l).collect();
        assert_eq!(xs, vec![10, 20, 30]);
    }

    #[test]
    fn problem_specs() {
        assert_eq!(build_problem(&ProblemSpec::sized("trap5", 10)).unwrap().genotype_len(), 10);
        assert!(build_problem(&ProblemSpec::sized("trap5", 11)).is_err());
        assert_eq!(build_problem(&ProblemSpec::sized("maxcut", 12)).unwrap().genotype_len(), 12);
        assert_eq!(build_problem(&ProblemSpec::sized("knapsack", 9)).unwrap().objective_count(), 2);
        assert!(build_problem(&ProblemSpec::sized("mobcpp", 9)).is_err());
        assert!(build_problem(&ProblemSpec::sized("onemax", 9)).is_err());
        let mut no_size = ProblemSpec::sized("lotz", 1);
        no_size.size = None;
        assert!(build_problem(&no_size).is_err());
    }

    #[test]
    fn config_from_toml() {
        let c = ExperimentConfig::from_toml(
            r#"
            methods = ["mo-p3-random", "nsga2"]
            budget = 1000
            repeats = 3
            out = "out"
            [problem]
            name = "trap5"
            size = 20
            "#,
        )
        .unwrap();
        assert_eq!(c.methods, vec![Method::MoP3Random, Method::Nsga2]);
        assert_eq!(c.problem, ProblemSpec::sized("trap5", 20));
        assert_eq!((c.repeats, c.seed, c.population, c.neighborhood), (3, 0, 400, 20));
        assert!(c.record_wall_time);
        assert!(ExperimentConfig::from_toml("methods = [\"p3\"]").is_err());
    }

    #[test]
    fn auto_reference_falls_back_to_merge() {
        let k = KnapsackInstance::generate(30, 2, 1).unwrap();
        let a = Front::new(vec![crate::ObjectiveVector::pair(-1.0, -5.0)]).unwrap();
        let b = Front::new(vec![crate::ObjectiveVector::pair(-5.0, -1.0)]).unwrap();
        assert_eq!(auto_reference(&k, &[a.clone(), b.clone()]).unwrap().len(), 2);
        let small = KnapsackInstance::generate(8, 2, 1).unwrap();
        assert_eq!(auto_reference(&small, &[a]).unwrap(), brute_force_front(&small).unwrap());
    }
}
