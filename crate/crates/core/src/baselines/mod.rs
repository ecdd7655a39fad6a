//! Reference optimizers: NSGA-II and MOEA/D with Tchebycheff decomposition.

mod moead;
mod nsga2;
mod operators;

pub use moead::{
    neighborhoods, run_moead, run_moead_traced, tchebycheff, uniform_weights, GenerationTrace, MoeadConfig,
};
pub use nsga2::{crowded_cmp, crowding_distance, non_dominated_sort, run_nsga2, Nsga2Config};
pub use operators::{bit_flip_mutation, one_point_crossover, uniform_crossover};

use crate::engine::ElitistArchive;
use crate::error::{Error, Result};
use crate::gateway::EvaluationGateway;
use crate::solution::{Genotype, Solution};

/// Evaluates in order until the budget runs out. The flag reports
/// exhaustion; the returned solutions are those evaluated before it.
fn evaluate_all(gateway: &mut EvaluationGateway, genotypes: Vec<Genotype>) -> Result<(Vec<Solution>, bool)> {
    let mut out = Vec::with_capacity(genotypes.len());
    for genotype in genotypes {
        match gateway.evaluate(&genotype) {
            Ok(e) => out.push(Solution {
                genotype,
                objectives: e.objectives,
                found_at: e.found_at,
            }),
            Err(Error::BudgetExhausted { .. }) => return Ok((out, true)),
            Err(err) => return Err(err),
        }
    }
    Ok((out, false))
}

/// Non-dominated subset, earliest-found solution kept per objective vector.
fn final_archive<'a>(solutions: impl Iterator<Item = &'a Solution>) -> ElitistArchive {
    let mut sorted: Vec<&Solution> = solutions.collect();
    sorted.sort_by_key(|s| s.found_at);
    let mut archive = ElitistArchive::new();
    for s in sorted {
        archive.try_add(&s.genotype, &s.objectives, s.found_at);
    }
    archive
}
