//! Multi-objective parameter-less population pyramid (MO-P3) with
//! DSM-based linkage learning, NSGA-II and MOEA/D baselines, benchmark and
//! production-planning problems, and front quality metrics.

pub mod baselines;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod gateway;
pub mod linkage;
pub mod metrics;
pub mod problems;
pub mod solution;

pub use baselines::{run_moead, run_nsga2, MoeadConfig, Nsga2Config};
pub use engine::{run_mo_p3, ElitistArchive, MoP3, MoP3Config, WeightStrategy};
pub use error::{Error, Result};
pub use gateway::{Evaluation, EvaluationGateway, Problem};
pub use metrics::{gd, igd, merge_pseudo_optimal, Front};
pub use solution::{dominates, scalarize, Genotype, ObjectiveNormalizer, ObjectiveVector, Solution, WeightVector};
