//! Command-line front end: run experiments, generate instances, score fronts.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mop3::experiment::{
    emit_plot_data, read_csv, run_experiment, write_csv, ExperimentConfig, Method, ProblemSpec, RunRow, RUNS_FILE,
    SUMMARY_FILE,
};
use mop3::metrics::{gd, igd, read_front};
use mop3::problems::{generate_mobcpp_instance, KnapsackInstance, MaxcutInstance, MobcppParams};

#[derive(Parser)]
#[command(name = "mop3", version, about = "Multi-objective optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run methods on a problem and write fronts, run records and summaries.
    Run(Box<RunArgs>),
    /// Generate a problem instance file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Print IGD and GD of a front against a reference front.
    Igd {
        #[arg(long)]
        front: PathBuf,
        #[arg(long)]
        reference: PathBuf,
        /// Accept files holding dominated or repeated points.
        #[arg(long)]
        raw: bool,
    },
    /// Merge runs.csv files from several output directories into plot series.
    Plot {
        /// Output directories of earlier runs.
        #[arg(required = true)]
        dirs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Experiment TOML; the flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Method ids, repeatable or comma separated.
    #[arg(long = "method", value_delimiter = ',')]
    methods: Vec<Method>,
    #[arg(long)]
    problem: Option<String>,
    /// Genotype length of a synthetic problem, or of a generated instance.
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Seed for instances generated from --size.
    #[arg(long)]
    instance_seed: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    repeats: Option<u64>,
    /// First run seed; runs use seed..seed+repeats.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reference front file, or `auto`.
    #[arg(long)]
    reference: Option<String>,
    /// MO-P3 archive grid widths, one per objective.
    #[arg(long, value_delimiter = ',')]
    epsilon: Vec<f64>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    subproblems: Option<usize>,
    #[arg(long)]
    neighborhood: Option<usize>,
    /// Write 0 for wall times so that repeated runs give identical files.
    #[arg(long)]
    no_wall_time: bool,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Random weighted graph.
    Maxcut {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = mop3::experiment::MAXCUT_DENSITY)]
        density: f64,
        #[arg(long, default_value_t = mop3::experiment::MAXCUT_MAX_WEIGHT)]
        max_weight: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random multi-knapsack instance.
    Knapsack {
        #[arg(long)]
        items: usize,
        #[arg(long, default_value_t = 2)]
        knapsacks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random production-planning instance (TOML).
    Mobcpp {
        #[arg(long, default_value_t = 1)]
        halls: usize,
        #[arg(long)]
        resources: usize,
        #[arg(long)]
        commodities: usize,
        #[arg(long)]
        recipes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => run(*args),
        Command::Generate { kind } => generate(kind),
        Command::Igd { front, reference, raw } => {
            let s = read_front(&front, raw).with_context(|| format!("reading {}", front.display()))?;
            let r = read_front(&reference, raw).with_context(|| format!("reading {}", reference.display()))?;
            println!("igd {}", igd(&s, &r)?);
            println!("gd {}", gd(&s, &r)?);
            Ok(())
        }
        Command::Plot { dirs, out } => plot(&dirs, &out),
    }
}

fn build_config(args: RunArgs) -> Result<ExperimentConfig> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ExperimentConfig::from_toml(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => {
            let Some(name) = &args.problem else {
                bail!("--problem is required without --config");
            };
            let Some(budget) = args.budget else {
                bail!("--budget is required without --config");
            };
            let out = args.out.clone().unwrap_or_else(|| PathBuf::from("out"));
            let problem = ProblemSpec {
                name: name.clone(),
                size: None,
                instance: None,
                instance_seed: 0,
            };
            ExperimentConfig::new(Method::ALL.to_vec(), problem, budget, out)
        }
    };
    if !args.methods.is_empty() {
        config.methods = args.methods;
    }
    if let Some(name) = args.problem {
        config.problem.name = name;
    }
    if args.size.is_some() {
        config.problem.size = args.size;
    }
    if args.instance.is_some() {
        config.problem.instance = args.instance;
    }
    if let Some(s) = args.instance_seed {
        config.problem.instance_seed = s;
    }
    if let Some(b) = args.budget {
        config.budget = b;
    }
    if let Some(r) = args.repeats {
        config.repeats = r;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(o) = args.out {
        config.out = o;
    }
    match args.reference.as_deref() {
        Some("auto") => config.reference = None,
        Some(p) => config.reference = Some(PathBuf::from(p)),
        None => {}
    }
    if !args.epsilon.is_empty() {
        config.epsilon = args.epsilon;
    }
    if let Some(p) = args.population {
        config.population = p;
    }
    if let Some(n) = args.subproblems {
        config.subproblems = n;
    }
    if let Some(t) = args.neighborhood {
        config.neighborhood = t;
    }
    if args.no_wall_time {
        config.record_wall_time = false;
    }
    Ok(config)
}

fn run(args: RunArgs) -> Result<()> {
    let config = build_config(args)?;
    let records = run_experiment(&config)?;
    for r in &records {
        println!(
            "{} seed {}: igd {:.6}, ffe_final {}, front {}",
            r.method,
            r.seed,
            r.igd,
            r.ffe_final,
            r.front.len()
        );
    }
    println!("wrote {}", config.out.join(SUMMARY_FILE).display());
    Ok(())
}

fn generate(kind: GenerateKind) -> Result<()> {
    let out = match kind {
        GenerateKind::Maxcut {
            vertices,
            density,
            max_weight,
            seed,
            out,
        } => {
            MaxcutInstance::generate(vertices, density, max_weight, seed)?.save(&out)?;
            out
        }
        GenerateKind::Knapsack {
            items,
            knapsacks,
            seed,
            out,
        } => {
            KnapsackInstance::generate(items, knapsacks, seed)?.save(&out)?;
            out
        }
        GenerateKind::Mobcpp {
            halls,
            resources,
            commodities,
            recipes,
            seed,
            out,
        } => {
            let params = MobcppParams::multi_hall(halls, resources, commodities, recipes);
            generate_mobcpp_instance(&params, seed)?.save(&out)?;
            out
        }
    };
    println!("wrote {}", out.display());
    Ok(())
}

fn plot(dirs: &[PathBuf], out: &Path) -> Result<()> {
    let mut rows: Vec<RunRow> = Vec::new();
    for dir in dirs {
        let path = dir.join(RUNS_FILE);
        rows.extend(read_csv::<RunRow>(&path).with_context(|| format!("reading {}", path.display()))?);
    }
    fs::create_dir_all(out)?;
    write_csv(&out.join(RUNS_FILE), &rows)?;
    for path in emit_plot_data(&rows, out)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
