use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::metrics::Front;
use crate::solution::{Genotype, ObjectiveVector, Solution};

/// Store of mutually non-dominated solutions, optionally thinned by an
/// objective-space grid (at most one member per grid cell).
///
/// Members are kept sorted lexicographically by objectives. The first
/// solution found for an objective vector is the one retained.
#[derive(Clone, Debug, Default)]
pub struct ElitistArchive {
    entries: Vec<Solution>,
    epsilon: Option<Vec<f64>>,
}

impl ElitistArchive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Grid with cell width `epsilon[k]` along objective k. All widths must
    /// be positive; an empty vector means no grid.
    pub fn with_epsilon(epsilon: Vec<f64>) -> Result<Self> {
        if epsilon.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::InvalidConfig("grid widths must be positive".into()));
        }
        Ok(ElitistArchive {
            entries: Vec::new(),
            epsilon: (!epsilon.is_empty()).then_some(epsilon),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Solution] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Solution> {
        self.entries
    }

    pub fn front(&self) -> Front {
        Front::new(self.entries.iter().map(|s| s.objectives.clone()).collect()).expect("uniform dimension")
    }

    /// Largest evaluation index among the members, i.e. when the last
    /// member of the current archive was found.
    pub fn ffe_to_final(&self) -> u64 {
        self.entries.iter().map(|s| s.found_at).max().unwrap_or(0)
    }

    fn cell(&self, o: &ObjectiveVector) -> Option<Vec<i64>> {
        self.epsilon
            .as_ref()
            .map(|eps| o.values().iter().zip(eps).map(|(v, e)| (v / e).floor() as i64).collect())
    }

    /// Offers a solution. Rejected if a member dominates or equals it, or
    /// (with a grid) shares its cell without being dominated by it.
    /// Otherwise inserted, evicting every member it dominates.
    pub fn try_add(&mut self, genotype: &Genotype, objectives: &ObjectiveVector, found_at: u64) -> bool {
        let inserted = if self.epsilon.is_none() && objectives.len() == 2 {
            self.try_add_pair(genotype, objectives, found_at)
        } else {
            self.try_add_general(genotype, objectives, found_at)
        };
        if inserted {
            debug_assert!(self.is_mutually_non_dominated());
        }
        inserted
    }

    fn solution(genotype: &Genotype, objectives: &ObjectiveVector, found_at: u64) -> Solution {
        Solution {
            genotype: genotype.clone(),
            objectives: objectives.clone(),
            found_at,
        }
    }

    /// Two objectives without grid: members sorted by the first objective
    /// have strictly decreasing second objectives, so both checks are local.
    fn try_add_pair(&mut self, genotype: &Genotype, o: &ObjectiveVector, found_at: u64) -> bool {
        let p = self.entries.partition_point(|s| s.objectives[0] < o[0]);
        if p > 0 && self.entries[p - 1].objectives[1] <= o[1] {
            return false;
        }
        if p < self.entries.len() && self.entries[p].objectives[0] == o[0] && self.entries[p].objectives[1] <= o[1] {
            return false;
        }
        let end = p + self.entries[p..].iter().take_while(|s| s.objectives[1] >= o[1]).count();
        self.entries
            .splice(p..end, std::iter::once(Self::solution(genotype, o, found_at)));
        true
    }

    fn try_add_general(&mut self, genotype: &Genotype, o: &ObjectiveVector, found_at: u64) -> bool {
        if self.entries.iter().any(|s| s.objectives.dominates(o) || s.objectives == *o) {
            return false;
        }
        if let Some(cell) = self.cell(o) {
            let blocked = self
                .entries
                .iter()
                .any(|s| self.cell(&s.objectives).as_ref() == Some(&cell) && !o.dominates(&s.objectives));
            if blocked {
                return false;
            }
        }
        self.entries.retain(|s| !o.dominates(&s.objectives));
        let p = self
            .entries
            .partition_point(|s| s.objectives.lex_cmp(o) == Ordering::Less);
        self.entries.insert(p, Self::solution(genotype, o, found_at));
        true
    }

    /// Full pairwise check of the archive invariants.
    pub fn is_mutually_non_dominated(&self) -> bool {
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if a.objectives.dominates(&b.objectives)
                    || b.objectives.dominates(&a.objectives)
                    || a.objectives == b.objectives
                {
                    return false;
                }
                if self.epsilon.is_some() && self.cell(&a.objectives) == self.cell(&b.objectives) {
                    return false;
                }
            }
        }
        true
    }
}
