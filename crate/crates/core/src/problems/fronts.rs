//! Reference fronts: analytic where known, exhaustive enumeration otherwise.

use crate::error::{Error, Result};
use crate::gateway::Problem;
use crate::metrics::{non_dominated, Front};
use crate::solution::Genotype;

/// Longest genotype [`brute_force_front`] accepts.
pub const MAX_ENUMERATION_LEN: usize = 25;

pub fn optimal_front(problem: &dyn Problem) -> Result<Front> {
    problem
        .optimal_front()
        .ok_or_else(|| Error::Unsupported(format!("no analytic front for {}", problem.name())))
}

/// Non-dominated set over all `2^l` genotypes.
pub fn brute_force_front(problem: &dyn Problem) -> Result<Front> {
    let l = problem.genotype_len();
    if l > MAX_ENUMERATION_LEN {
        return Err(Error::Unsupported(format!(
            "enumeration limited to {MAX_ENUMERATION_LEN} bits, problem has {l}"
        )));
    }
    let mut front = Vec::new();
    let mut bits = vec![false; l];
    for code in 0u64..(1u64 << l) {
        for (i, b) in bits.iter_mut().enumerate() {
            *b = code >> i & 1 == 1;
        }
        front.push(problem.evaluate(&Genotype::from_bools(&bits)));
        // keep the working set small on large enumerations
        if front.len() >= 1 << 16 {
            front = non_dominated(front);
        }
    }
    Front::new(front)
}
