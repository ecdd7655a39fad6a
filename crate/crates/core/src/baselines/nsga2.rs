use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operators::{bit_flip_mutation, uniform_crossover};
use super::{evaluate_all, final_archive};
use crate::engine::ElitistArchive;
use crate::error::{Error, Result};
use crate::gateway::{EvaluationGateway, Problem};
use crate::solution::{Genotype, ObjectiveVector, Solution};

#[derive(Clone, Debug, PartialEq)]
pub struct Nsga2Config {
    pub population: usize,
    pub crossover_probability: f64,
    /// Per-bit flip probability; `None` means 1/l.
    pub mutation_probability: Option<f64>,
    pub tournament_size: usize,
}

impl Default for Nsga2Config {
    fn default() -> Self {
        Nsga2Config {
            population: 400,
            crossover_probability: 0.9,
            mutation_probability: None,
            tournament_size: 2,
        }
    }
}

impl Nsga2Config {
    pub fn validate(&self) -> Result<()> {
        if self.population < 4 || !self.population.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "population must be even and at least 4, got {}",
                self.population
            )));
        }
        if !(0.0..=1.0).contains(&self.crossover_probability) {
            return Err(Error::InvalidConfig("crossover probability outside [0, 1]".into()));
        }
        if let Some(p) = self.mutation_probability {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig("mutation probability outside [0, 1]".into()));
            }
        }
        if self.tournament_size == 0 {
            return Err(Error::InvalidConfig("tournament size must be positive".into()));
        }
        Ok(())
    }
}

/// Partitions indices into non-domination fronts, best first. Indices in
/// each front are ascending.
pub fn non_dominated_sort(points: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let mut fronts = if points.first().is_some_and(|p| p.len() == 2) {
        sort_pairs(points)
    } else {
        sort_general(points)
    };
    for f in &mut fronts {
        f.sort_unstable();
    }
    fronts
}

/// Two objectives: in lexicographic order every dominator of a point comes
/// before it, and the last point added to a front has that front's smallest
/// second objective.
fn sort_pairs(points: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]).then(a.cmp(&b)));
    let mut fronts: Vec<Vec<usize>> = Vec::new();
    for i in order {
        let p = &points[i];
        let dominated_by = |f: &Vec<usize>| {
            let last = &points[*f.last().expect("fronts are non-empty")];
            last.dominates(p)
        };
        let k = fronts.partition_point(dominated_by);
        match fronts.get_mut(k) {
            Some(f) => f.push(i),
            None => fronts.push(vec![i]),
        }
    }
    fronts
}

fn sort_general(points: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if points[i].dominates(&points[j]) {
                dominated[i].push(j);
                count[j] += 1;
            } else if points[j].dominates(&points[i]) {
                dominated[j].push(i);
                count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated[i] {
                count[j] -= 1;
                if count[j] == 0 {
                    next.push(j);
                }
            }
        }
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Crowding distance of each member of `front` (same order). Extremes of
/// every objective get infinity.
pub fn crowding_distance(points: &[ObjectiveVector], front: &[usize]) -> Vec<f64> {
    let n = front.len();
    let mut d = vec![0.0; n];
    if n == 0 {
        return d;
    }
    let m = points[front[0]].len();
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..m {
        order.sort_by(|&a, &b| {
            points[front[a]][k]
                .total_cmp(&points[front[b]][k])
                .then(front[a].cmp(&front[b]))
        });
        let lo = points[front[order[0]]][k];
        let hi = points[front[order[n - 1]]][k];
        d[order[0]] = f64::INFINITY;
        d[order[n - 1]] = f64::INFINITY;
        if hi > lo {
            for w in 1..n.saturating_sub(1) {
                let gap = points[front[order[w + 1]]][k] - points[front[order[w - 1]]][k];
                d[order[w]] += gap / (hi - lo);
            }
        }
    }
    d
}

/// Crowded comparison: lower rank first, then larger crowding distance.
pub fn crowded_cmp(rank_a: usize, crowd_a: f64, rank_b: usize, crowd_b: f64) -> Ordering {
    rank_a.cmp(&rank_b).then(crowd_b.total_cmp(&crowd_a))
}

/// Selects `size` survivors: whole fronts in rank order, then the most
/// spread members of the first front that does not fit. Returns indices
/// with their rank and crowding distance.
fn select_survivors(points: &[ObjectiveVector], size: usize) -> Vec<(usize, usize, f64)> {
    let mut chosen = Vec::with_capacity(size);
    for (rank, front) in non_dominated_sort(points).into_iter().enumerate() {
        if chosen.len() >= size {
            break;
        }
        let crowd = crowding_distance(points, &front);
        let mut members: Vec<(usize, usize, f64)> = front.iter().zip(crowd).map(|(&i, c)| (i, rank, c)).collect();
        if chosen.len() + members.len() > size {
            members.sort_by(|a, b| crowded_cmp(a.1, a.2, b.1, b.2).then(a.0.cmp(&b.0)));
            members.truncate(size - chosen.len());
        }
        chosen.extend(members);
    }
    chosen
}

struct Member {
    solution: Solution,
    rank: usize,
    crowding: f64,
}

fn tournament<'a, R: Rng + ?Sized>(population: &'a [Member], size: usize, rng: &mut R) -> &'a Member {
    let mut best = &population[rng.gen_range(0..population.len())];
    for _ in 1..size {
        let c = &population[rng.gen_range(0..population.len())];
        if crowded_cmp(c.rank, c.crowding, best.rank, best.crowding) == Ordering::Less {
            best = c;
        }
    }
    best
}

/// NSGA-II until the evaluation budget is spent. Returns the non-dominated
/// members of the last population together with any offspring evaluated in
/// the interrupted generation.
pub fn run_nsga2(problem: &dyn Problem, config: &Nsga2Config, budget: u64, seed: u64) -> Result<ElitistArchive> {
    config.validate()?;
    if budget == 0 {
        return Err(Error::InvalidConfig("budget must be positive".into()));
    }
    let l = problem.genotype_len();
    let rate = config.mutation_probability.unwrap_or(1.0 / l.max(1) as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gateway = EvaluationGateway::new(problem, budget);

    let initial: Vec<Genotype> = (0..config.population).map(|_| Genotype::random(l, &mut rng)).collect();
    let (evaluated, done) = evaluate_all(&mut gateway, initial)?;
    if done {
        return Ok(final_archive(evaluated.iter()));
    }
    let points: Vec<ObjectiveVector> = evaluated.iter().map(|s| s.objectives.clone()).collect();
    let mut population: Vec<Member> = Vec::with_capacity(config.population);
    let mut slots: Vec<Option<Solution>> = evaluated.into_iter().map(Some).collect();
    for (i, rank, crowding) in select_survivors(&points, config.population) {
        let solution = slots[i].take().expect("each index selected once");
        population.push(Member { solution, rank, crowding });
    }

    loop {
        let mut children = Vec::with_capacity(config.population);
        while children.len() < config.population {
            let a = &tournament(&population, config.tournament_size, &mut rng).solution.genotype;
            let b = &tournament(&population, config.tournament_size, &mut rng).solution.genotype;
            let (mut x, mut y) = if rng.gen::<f64>() < config.crossover_probability {
                uniform_crossover(a, b, &mut rng)
            } else {
                (a.clone(), b.clone())
            };
            bit_flip_mutation(&mut x, rate, &mut rng);
            bit_flip_mutation(&mut y, rate, &mut rng);
            children.push(x);
            children.push(y);
        }
        let (offspring, done) = evaluate_all(&mut gateway, children)?;
        if done {
            let all = population.iter().map(|m| &m.solution).chain(offspring.iter());
            return Ok(final_archive(all));
        }
        let mut slots: Vec<Option<Solution>> = population
            .drain(..)
            .map(|m| Some(m.solution))
            .chain(offspring.into_iter().map(Some))
            .collect();
        let points: Vec<ObjectiveVector> = slots
            .iter()
            .map(|s| s.as_ref().expect("filled").objectives.clone())
            .collect();
        for (i, rank, crowding) in select_survivors(&points, config.population) {
            let solution = slots[i].take().expect("each index selected once");
            population.push(Member { solution, rank, crowding });
        }
    }
}
