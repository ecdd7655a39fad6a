//! The MO-P3 optimizer.
//!
//! Every iteration draws a weight vector, hill-climbs a random genotype under
//! that weighting and lets it climb the pyramid, mixing with each level in
//! turn. Every fresh evaluation is offered to the elitist archive, which is
//! the optimizer's output.

mod archive;
mod mixing;
mod pyramid;
mod weights;

pub use archive::ElitistArchive;
pub use mixing::{apply_cluster, fihc, optimal_mix, ClusterOrder, MixOutcome};
pub use pyramid::{Level, Pyramid};
pub use weights::{
    choose_interval, random_weight_vector, smart_weight_vector, tournament_interval, weight_points, WeightStrategy,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gateway::{Evaluation, EvaluationGateway, Problem};
use crate::solution::{Genotype, ObjectiveNormalizer, WeightVector};

/// Gateway plus archive: every genotype evaluated for the first time is
/// offered to the archive.
pub struct Evaluator<'p> {
    gateway: EvaluationGateway<'p>,
    archive: ElitistArchive,
}

impl<'p> Evaluator<'p> {
    pub fn new(gateway: EvaluationGateway<'p>, archive: ElitistArchive) -> Self {
        Evaluator { gateway, archive }
    }

    pub fn evaluate(&mut self, g: &Genotype) -> Result<Evaluation> {
        let before = self.gateway.ffe();
        let e = self.gateway.evaluate(g)?;
        if self.gateway.ffe() > before {
            self.archive.try_add(g, &e.objectives, e.found_at);
        }
        Ok(e)
    }

    pub fn normalizer(&self) -> &ObjectiveNormalizer {
        self.gateway.normalizer()
    }

    pub fn gateway(&self) -> &EvaluationGateway<'p> {
        &self.gateway
    }

    pub fn archive(&self) -> &ElitistArchive {
        &self.archive
    }

    pub fn into_archive(self) -> ElitistArchive {
        self.archive
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoP3Config {
    pub strategy: WeightStrategy,
    pub cluster_order: ClusterOrder,
    /// Archive grid widths per objective; empty for an exact archive.
    pub epsilon: Vec<f64>,
    /// Maximum number of cached evaluations; `None` for unbounded.
    pub cache_capacity: Option<usize>,
}

impl MoP3Config {
    pub fn new(strategy: WeightStrategy) -> Self {
        MoP3Config {
            strategy,
            cluster_order: ClusterOrder::Random,
            epsilon: Vec::new(),
            cache_capacity: None,
        }
    }
}

/// Optimizer state: pyramid, evaluator (gateway and archive) and RNG.
pub struct MoP3<'p> {
    config: MoP3Config,
    pyramid: Pyramid,
    evaluator: Evaluator<'p>,
    rng: ChaCha8Rng,
    iterations: u64,
}

impl<'p> MoP3<'p> {
    pub fn new(problem: &'p dyn Problem, budget: u64, config: MoP3Config, seed: u64) -> Result<Self> {
        if budget == 0 {
            return Err(Error::InvalidConfig("budget must be positive".into()));
        }
        if problem.objective_count() != 2 {
            return Err(Error::Unsupported(format!(
                "weight strategies are two-objective, problem has {}",
                problem.objective_count()
            )));
        }
        if problem.genotype_len() < 2 {
            return Err(Error::TooFewGenes(problem.genotype_len()));
        }
        let gateway = EvaluationGateway::new(problem, budget).with_cache_capacity(config.cache_capacity);
        let archive = ElitistArchive::with_epsilon(config.epsilon.clone())?;
        Ok(MoP3 {
            pyramid: Pyramid::new(problem.genotype_len()),
            evaluator: Evaluator::new(gateway, archive),
            rng: ChaCha8Rng::seed_from_u64(seed),
            iterations: 0,
            config,
        })
    }

    pub fn archive(&self) -> &ElitistArchive {
        self.evaluator.archive()
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn gateway(&self) -> &EvaluationGateway<'p> {
        self.evaluator.gateway()
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn into_archive(self) -> ElitistArchive {
        self.evaluator.into_archive()
    }

    fn weight_vector(&mut self) -> WeightVector {
        match self.config.strategy {
            WeightStrategy::Random => random_weight_vector(&mut self.rng),
            WeightStrategy::Smart => smart_weight_vector(self.evaluator.archive(), &mut self.rng),
        }
    }

    /// One iteration. Budget exhaustion is returned as an error; whatever
    /// was evaluated before it stays in the archive.
    pub fn iterate(&mut self) -> Result<()> {
        self.iterations += 1;
        let w = self.weight_vector();
        let mut ind = Genotype::random(self.pyramid_genes(), &mut self.rng);
        let mut current = self.evaluator.evaluate(&ind)?.objectives;
        fihc(&mut ind, &mut current, &w, &mut self.evaluator, &mut self.rng)?;
        if !self.pyramid.contains(&ind) {
            self.pyramid.insert(0, ind.clone())?;
        }
        let mut index = 0;
        while index < self.pyramid.level_count() {
            let level = self.pyramid.level_mut(index);
            if level.is_empty() {
                index += 1;
                continue;
            }
            let before = ind.clone();
            let (members, tree) = level.parts()?;
            optimal_mix(
                &mut ind,
                &mut current,
                members,
                tree,
                self.config.cluster_order,
                &w,
                &mut self.evaluator,
                &mut self.rng,
            )?;
            if ind != before && !self.pyramid.contains(&ind) {
                self.pyramid.insert(index + 1, ind.clone())?;
            }
            index += 1;
        }
        debug_assert!(self.pyramid.is_duplicate_free());
        Ok(())
    }

    fn pyramid_genes(&self) -> usize {
        self.evaluator.gateway().problem().genotype_len()
    }

    /// Iterates until the budget is spent or `stop` returns true (checked
    /// after every completed iteration).
    pub fn run_until(&mut self, mut stop: impl FnMut(&ElitistArchive) -> bool) -> Result<()> {
        loop {
            match self.iterate() {
                Ok(()) => {
                    if stop(self.evaluator.archive()) {
                        return Ok(());
                    }
                }
                Err(Error::BudgetExhausted { .. }) => return Ok(()),
                Err(e) => return Err(e),
            }
        }
    }

    /// Iterates until the budget is spent.
    pub fn run(&mut self) -> Result<()> {
        self.run_until(|_| false)
    }
}

/// Runs MO-P3 with default settings until the budget is spent.
pub fn run_mo_p3(problem: &dyn Problem, budget: u64, strategy: WeightStrategy, seed: u64) -> Result<ElitistArchive> {
    let mut opt = MoP3::new(problem, budget, MoP3Config::new(strategy), seed)?;
    opt.run()?;
    Ok(opt.into_archive())
}
