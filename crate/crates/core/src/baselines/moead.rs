use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operators::{bit_flip_mutation, one_point_crossover};
use super::{evaluate_all, final_archive};
use crate::engine::ElitistArchive;
use crate::error::{Error, Result};
use crate::gateway::{EvaluationGateway, Problem};
use crate::solution::{Genotype, ObjectiveVector, Solution};

#[derive(Clone, Debug, PartialEq)]
pub struct MoeadConfig {
    /// Requested number of subproblems. With more than two objectives the
    /// largest simplex lattice not exceeding this count is used.
    pub subproblems: usize,
    pub neighborhood: usize,
    /// Per-bit flip probability; `None` means 1/l.
    pub mutation_probability: Option<f64>,
    /// Fixed reference point; `None` tracks the best value seen per objective.
    pub reference: Option<Vec<f64>>,
}

impl Default for MoeadConfig {
    fn default() -> Self {
        MoeadConfig {
            subproblems: 400,
            neighborhood: 20,
            mutation_probability: None,
            reference: None,
        }
    }
}

impl MoeadConfig {
    pub fn validate(&self, objectives: usize) -> Result<()> {
        if self.subproblems < 2 {
            return Err(Error::InvalidConfig("at least two subproblems are needed".into()));
        }
        let n = uniform_weights(objectives, self.subproblems)?.len();
        if self.neighborhood < 2 || self.neighborhood > n {
            return Err(Error::InvalidConfig(format!(
                "neighborhood must lie in 2..={n}, got {}",
                self.neighborhood
            )));
        }
        if let Some(p) = self.mutation_probability {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig("mutation probability outside [0, 1]".into()));
            }
        }
        if let Some(z) = &self.reference {
            if z.len() != objectives || z.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig("reference point must be finite, one value per objective".into()));
            }
        }
        Ok(())
    }
}

/// Tchebycheff scalarization max_i λ_i |f_i − z_i|.
pub fn tchebycheff(f: &ObjectiveVector, lambda: &[f64], z: &[f64]) -> f64 {
    f.values()
        .iter()
        .zip(lambda)
        .zip(z)
        .map(|((fi, li), zi)| li * (fi - zi).abs())
        .fold(0.0, f64::max)
}

/// Evenly spaced weight vectors on the unit simplex. Two objectives give
/// exactly `n` vectors from (0, 1) to (1, 0); more objectives give the
/// largest simplex lattice with at most `n` points.
pub fn uniform_weights(objectives: usize, n: usize) -> Result<Vec<Vec<f64>>> {
    if objectives < 2 || n < 2 {
        return Err(Error::InvalidConfig("weights need two objectives and two vectors".into()));
    }
    if objectives == 2 {
        let step = (n - 1) as f64;
        return Ok((0..n).map(|j| vec![j as f64 / step, 1.0 - j as f64 / step]).collect());
    }
    let mut h = 1;
    while lattice_size(objectives, h + 1) <= n {
        h += 1;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(objectives);
    lattice(objectives, h, h, &mut current, &mut out);
    Ok(out)
}

fn lattice_size(m: usize, h: usize) -> usize {
    // C(h + m - 1, m - 1)
    (1..m).fold(1usize, |acc, i| acc * (h + i) / i)
}

fn lattice(m: usize, h: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
    if current.len() == m - 1 {
        let mut w: Vec<f64> = current.iter().map(|&c| c as f64 / h as f64).collect();
        w.push(left as f64 / h as f64);
        out.push(w);
        return;
    }
    for c in 0..=left {
        current.push(c);
        lattice(m, h, left - c, current, out);
        current.pop();
    }
}

/// For every weight vector, the indices of the `t` closest ones (itself
/// included), nearest first with ties broken by index.
pub fn neighborhoods(weights: &[Vec<f64>], t: usize) -> Vec<Vec<usize>> {
    weights
        .iter()
        .map(|w| {
            let mut idx: Vec<(f64, usize)> = weights
                .iter()
                .enumerate()
                .map(|(j, v)| (w.iter().zip(v).map(|(a, b)| (a - b).powi(2)).sum::<f64>(), j))
                .collect();
            idx.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            idx.into_iter().take(t).map(|(_, j)| j).collect()
        })
        .collect()
}

/// Per-generation trace of every subproblem's incumbent Tchebycheff value,
/// measured against the reference point at the end of that generation.
pub type GenerationTrace = Vec<Vec<f64>>;

/// MOEA/D with Tchebycheff decomposition until the budget is spent. Returns
/// the non-dominated union of the subproblem incumbents.
pub fn run_moead(problem: &dyn Problem, config: &MoeadConfig, budget: u64, seed: u64) -> Result<ElitistArchive> {
    run_moead_traced(problem, config, budget, seed, None)
}

/// As [`run_moead`], optionally recording a [`GenerationTrace`].
pub fn run_moead_traced(
    problem: &dyn Problem,
    config: &MoeadConfig,
    budget: u64,
    seed: u64,
    mut trace: Option<&mut GenerationTrace>,
) -> Result<ElitistArchive> {
    let m = problem.objective_count();
    config.validate(m)?;
    if budget == 0 {
        return Err(Error::InvalidConfig("budget must be positive".into()));
    }
    let l = problem.genotype_len();
    let rate = config.mutation_probability.unwrap_or(1.0 / l.max(1) as f64);
    let weights = uniform_weights(m, config.subproblems)?;
    let hoods = neighborhoods(&weights, config.neighborhood);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gateway = EvaluationGateway::new(problem, budget);

    let initial: Vec<Genotype> = (0..weights.len()).map(|_| Genotype::random(l, &mut rng)).collect();
    let (mut incumbents, done) = evaluate_all(&mut gateway, initial)?;
    if done {
        return Ok(final_archive(incumbents.iter()));
    }
    let fixed = config.reference.is_some();
    let mut z = config.reference.clone().unwrap_or_else(|| vec![f64::INFINITY; m]);
    let improve_reference = |z: &mut Vec<f64>, o: &ObjectiveVector| {
        if !fixed {
            for (zi, &v) in z.iter_mut().zip(o.values()) {
                *zi = zi.min(v);
            }
        }
    };
    for s in &incumbents {
        improve_reference(&mut z, &s.objectives);
    }

    loop {
        for i in 0..weights.len() {
            let hood = &hoods[i];
            let a = hood[rng.gen_range(0..hood.len())];
            let mut b = hood[rng.gen_range(0..hood.len() - 1)];
            if b == a {
                b = hood[hood.len() - 1];
            }
            let mut child = one_point_crossover(&incumbents[a].genotype, &incumbents[b].genotype, &mut rng);
            bit_flip_mutation(&mut child, rate, &mut rng);
            let e = match gateway.evaluate(&child) {
                Ok(e) => e,
                Err(Error::BudgetExhausted { .. }) => return Ok(final_archive(incumbents.iter())),
                Err(err) => return Err(err),
            };
            improve_reference(&mut z, &e.objectives);
            for &j in hood {
                let lambda = &weights[j];
                if tchebycheff(&e.objectives, lambda, &z) <= tchebycheff(&incumbents[j].objectives, lambda, &z) {
                    incumbents[j] = Solution {
                        genotype: child.clone(),
                        objectives: e.objectives.clone(),
                        found_at: e.found_at,
                    };
                }
            }
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(
                incumbents
                    .iter()
                    .zip(&weights)
                    .map(|(s, w)| tchebycheff(&s.objectives, w, &z))
                    .collect(),
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{KnapsackInstance, Trap5Pair, ZeromaxOnemax};
    use proptest::prelude::*;

    #[test]
    fn tchebycheff_with_axis_weight_is_one_objective_gap() {
        let f = ObjectiveVector::pair(-3.0, 7.0);
        assert_eq!(tchebycheff(&f, &[1.0, 0.0], &[-5.0, 0.0]), 2.0);
        assert_eq!(tchebycheff(&f, &[0.0, 1.0], &[-5.0, 0.0]), 7.0);
        assert_eq!(tchebycheff(&f, &[0.5, 0.5], &[-5.0, 0.0]), 3.5);
    }

    #[test]
    fn two_objective_weights_are_evenly_spaced() {
        let w = uniform_weights(2, 5).unwrap();
        assert_eq!(w[0], vec![0.0, 1.0]);
        assert_eq!(w[2], vec![0.5, 0.5]);
        assert_eq!(w[4], vec![1.0, 0.0]);
    }

    #[test]
    fn three_objective_lattice() {
        let w = uniform_weights(3, 20).unwrap();
        // h = 4 gives C(6, 2) = 15 points, h = 5 would give 21
        assert_eq!(w.len(), 15);
        for v in &w {
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let mut dedup = w.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), w.len());
    }

    #[test]
    fn neighborhoods_start_with_self() {
        let w = uniform_weights(2, 10).unwrap();
        let h = neighborhoods(&w, 3);
        assert_eq!(h[0], vec![0, 1, 2]);
        let mut middle = h[5].clone();
        middle.sort_unstable();
        assert_eq!((h[5][0], middle), (5, vec![4, 5, 6]));
        assert_eq!(h[9], vec![9, 8, 7]);
    }

    #[test]
    fn config_validation() {
        assert!(MoeadConfig::default().validate(2).is_ok());
        let c = MoeadConfig { subproblems: 10, neighborhood: 11, ..MoeadConfig::default() };
        assert!(c.validate(2).is_err());
        let c = MoeadConfig { reference: Some(vec![0.0]), ..MoeadConfig::default() };
        assert!(c.validate(2).is_err());
    }

    #[test]
    fn extreme_weights_reach_both_single_objective_optima() {
        let p = ZeromaxOnemax::new(16);
        let c = MoeadConfig { subproblems: 2, neighborhood: 2, ..MoeadConfig::default() };
        let archive = run_moead(&p, &c, 20_000, 1).unwrap();
        let genotypes: Vec<&Genotype> = archive.entries().iter().map(|s| &s.genotype).collect();
        assert!(genotypes.contains(&&Genotype::zeros(16)));
        assert!(genotypes.contains(&&Genotype::ones(16)));
    }

    #[test]
    fn incumbents_never_worsen_under_a_fixed_reference() {
        let p = Trap5Pair::new(20).unwrap();
        let c = MoeadConfig {
            subproblems: 30,
            neighborhood: 5,
            reference: Some(vec![-20.0, -20.0]),
            ..MoeadConfig::default()
        };
        let mut trace = GenerationTrace::new();
        run_moead_traced(&p, &c, 20_000, 2, Some(&mut trace)).unwrap();
        assert!(trace.len() > 100);
        for pair in trace.windows(2) {
            for (before, after) in pair[0].iter().zip(&pair[1]) {
                assert!(after <= before);
            }
        }
    }

    #[test]
    fn identical_seeds_give_identical_output() {
        let p = Trap5Pair::new(20).unwrap();
        let c = MoeadConfig { subproblems: 40, ..MoeadConfig::default() };
        let a = run_moead(&p, &c, 5_000, 3).unwrap();
        let b = run_moead(&p, &c, 5_000, 3).unwrap();
        assert_eq!(a.entries(), b.entries());
    }

    #[test]
    fn three_objective_knapsack_runs() {
        let k = KnapsackInstance::generate(30, 3, 4).unwrap();
        let c = MoeadConfig { subproblems: 30, neighborhood: 5, ..MoeadConfig::default() };
        let archive = run_moead(&k, &c, 3_000, 4).unwrap();
        assert!(!archive.is_empty());
        assert!(archive.is_mutually_non_dominated());
    }

    proptest! {
        #[test]
        fn axis_weight_reduces_to_single_gap(f0 in -50.0f64..50.0, f1 in -50.0f64..50.0, z0 in -50.0f64..50.0, z1 in -50.0f64..50.0) {
            let f = ObjectiveVector::pair(f0, f1);
            prop_assert_eq!(tchebycheff(&f, &[1.0, 0.0], &[z0, z1]), (f0 - z0).abs());
        }
    }
}
