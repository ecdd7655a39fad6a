//! Budgeted, cached access to a problem's objective function.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::metrics::Front;
use crate::solution::{Genotype, ObjectiveNormalizer, ObjectiveVector};

/// A pseudo-Boolean multi-objective problem in minimization convention.
///
/// Implementations must be pure: the same genotype always yields the same
/// objective vector.
pub trait Problem: Send + Sync {
    /// Short identifier used in file names and reports.
    fn name(&self) -> String;

    fn genotype_len(&self) -> usize;

    fn objective_count(&self) -> usize {
        2
    }

    /// Objective vector of `g`. Callers guarantee `g.len() == genotype_len()`.
    fn evaluate(&self, g: &Genotype) -> ObjectiveVector;

    /// The exact Pareto-optimal front, for problems where it is known analytically.
    fn optimal_front(&self) -> Option<Front> {
        None
    }
}

impl<P: Problem + ?Sized> Problem for &P {
    fn name(&self) -> String {
        (**self).name()
    }
    fn genotype_len(&self) -> usize {
        (**self).genotype_len()
    }
    fn objective_count(&self) -> usize {
        (**self).objective_count()
    }
    fn evaluate(&self, g: &Genotype) -> ObjectiveVector {
        (**self).evaluate(g)
    }
    fn optimal_front(&self) -> Option<Front> {
        (**self).optimal_front()
    }
}

impl<P: Problem + ?Sized> Problem for Box<P> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn genotype_len(&self) -> usize {
        (**self).genotype_len()
    }
    fn objective_count(&self) -> usize {
        (**self).objective_count()
    }
    fn evaluate(&self, g: &Genotype) -> ObjectiveVector {
        (**self).evaluate(g)
    }
    fn optimal_front(&self) -> Option<Front> {
        (**self).optimal_front()
    }
}

/// Result of a gateway lookup.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub objectives: ObjectiveVector,
    /// FFE count at which this genotype was first evaluated (1-based).
    pub found_at: u64,
}

/// Counts fitness function evaluations (FFE) against a budget, memoizes
/// results per genotype and keeps the running objective normalizer.
///
/// Exhaustion is reported by the first call made after the FFE count reached
/// the budget. Two further guards stop runs that can no longer spend FFE:
/// every genotype of the search space is cached, or the total number of
/// lookups (hits included) reached `lookup_limit`.
pub struct EvaluationGateway<'p> {
    problem: &'p dyn Problem,
    budget: u64,
    ffe: u64,
    lookups: u64,
    lookup_limit: u64,
    cache: HashMap<Genotype, Evaluation>,
    capacity: Option<usize>,
    space_size: Option<u64>,
    normalizer: ObjectiveNormalizer,
}

impl<'p> EvaluationGateway<'p> {
    /// Default ratio between the lookup limit and the FFE budget.
    pub const LOOKUPS_PER_FFE: u64 = 20;

    pub fn new(problem: &'p dyn Problem, budget: u64) -> Self {
        let len = problem.genotype_len();
        EvaluationGateway {
            problem,
            budget,
            ffe: 0,
            lookups: 0,
            lookup_limit: budget.saturating_mul(Self::LOOKUPS_PER_FFE).max(1_000),
            cache: HashMap::new(),
            capacity: None,
            space_size: (len < 63).then(|| 1u64 << len),
            normalizer: ObjectiveNormalizer::new(problem.objective_count()),
        }
    }

    /// Caps the number of cached genotypes; once full, new results are not stored.
    pub fn with_cache_capacity(mut self, capacity: Option<usize>) -> Self {
        self.capacity = capacity;
        self
    }

    pub fn with_lookup_limit(mut self, limit: u64) -> Self {
        self.lookup_limit = limit;
        self
    }

    pub fn problem(&self) -> &'p dyn Problem {
        self.problem
    }

    pub fn ffe(&self) -> u64 {
        self.ffe
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn lookups(&self) -> u64 {
        self.lookups
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    pub fn normalizer(&self) -> &ObjectiveNormalizer {
        &self.normalizer
    }

    pub fn is_exhausted(&self) -> bool {
        self.ffe >= self.budget
            || self.lookups >= self.lookup_limit
            || self
                .space_size
                .is_some_and(|s| self.cache.len() as u64 >= s)
    }

    pub fn evaluate(&mut self, g: &Genotype) -> Result<Evaluation> {
        let expected = self.problem.genotype_len();
        if g.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: g.len(),
            });
        }
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted { ffe: self.ffe });
        }
        self.lookups += 1;
        if let Some(hit) = self.cache.get(g) {
            return Ok(hit.clone());
        }
        self.ffe += 1;
        let objectives = self.problem.evaluate(g);
        self.normalizer.observe(&objectives);
        let evaluation = Evaluation {
            objectives,
            found_at: self.ffe,
        };
        if self.capacity.is_none_or(|cap| self.cache.len() < cap) {
            self.cache.insert(g.clone(), evaluation.clone());
        }
        Ok(evaluation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{Trap5Pair, ZeromaxOnemax};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zeromax_onemax_extreme_point() {
        let p = ZeromaxOnemax::new(4);
        let mut gw = EvaluationGateway::new(&p, 100);
        let e = gw.evaluate(&Genotype::ones(4)).unwrap();
        assert_eq!(e.objectives.values(), &[-4.0, 0.0]);
        assert_eq!(e.found_at, 1);
    }

    #[test]
    fn cache_hit_does_not_count() {
        let p = ZeromaxOnemax::new(4);
        let mut gw = EvaluationGateway::new(&p, 100);
        let g = Genotype::parse("0110").unwrap();
        let a = gw.evaluate(&g).unwrap();
        let b = gw.evaluate(&g).unwrap();
        assert_eq!(a, b);
        assert_eq!(gw.ffe(), 1);
        assert_eq!(gw.lookups(), 2);
    }

    #[test]
    fn trap_pair_through_gateway() {
        let p = Trap5Pair::new(10).unwrap();
        let mut gw = EvaluationGateway::new(&p, 10);
        let e = gw.evaluate(&Genotype::parse("11111 00000").unwrap()).unwrap();
        assert_eq!(e.objectives.values(), &[-9.0, -9.0]);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let p = ZeromaxOnemax::new(4);
        let mut gw = EvaluationGateway::new(&p, 10);
        let err = gw.evaluate(&Genotype::zeros(5)).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { expected: 4, found: 5 }));
        assert_eq!(gw.ffe(), 0);
    }

    #[test]
    fn budget_is_never_exceeded() {
        let p = ZeromaxOnemax::new(16);
        let mut gw = EvaluationGateway::new(&p, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut ok = 0;
        for _ in 0..50 {
            match gw.evaluate(&Genotype::random(16, &mut rng)) {
                Ok(_) => ok += 1,
                Err(Error::BudgetExhausted { ffe }) => {
                    assert_eq!(ffe, 3);
                    break;
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(ok, 3);
        assert_eq!(gw.ffe(), 3);
        // exhausted gateway refuses cache hits too
        assert!(gw.evaluate(&Genotype::zeros(16)).is_err());
    }

    #[test]
    fn whole_space_cached_counts_as_exhausted() {
        let p = ZeromaxOnemax::new(2);
        let mut gw = EvaluationGateway::new(&p, 1_000);
        for s in ["00", "01", "10", "11"] {
            gw.evaluate(&Genotype::parse(s).unwrap()).unwrap();
        }
        assert!(gw.is_exhausted());
        assert!(matches!(
            gw.evaluate(&Genotype::parse("00").unwrap()),
            Err(Error::BudgetExhausted { ffe: 4 })
        ));
    }

    #[test]
    fn capacity_limits_cache() {
        let p = ZeromaxOnemax::new(8);
        let mut gw = EvaluationGateway::new(&p, 100).with_cache_capacity(Some(1));
        let a = Genotype::zeros(8);
        let b = Genotype::ones(8);
        gw.evaluate(&a).unwrap();
        gw.evaluate(&b).unwrap();
        gw.evaluate(&b).unwrap();
        assert_eq!(gw.cached(), 1);
        assert_eq!(gw.ffe(), 3);
    }

    proptest! {
        #[test]
        fn ffe_counts_distinct_genotypes(picks in proptest::collection::vec(0usize..12, 1..80)) {
            let p = ZeromaxOnemax::new(10);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let pool: Vec<Genotype> = (0..12).map(|_| Genotype::random(10, &mut rng)).collect();
            let mut gw = EvaluationGateway::new(&p, 1_000);
            let mut distinct = std::collections::HashSet::new();
            for &i in &picks {
                gw.evaluate(&pool[i]).unwrap();
                distinct.insert(pool[i].clone());
            }
            prop_assert_eq!(gw.ffe() as usize, distinct.len());
        }
    }
}
