use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linkage::{LinkageTree, PairCounts};
use crate::solution::Genotype;

/// One subpopulation with its pairwise statistics and a linkage tree that
/// is rebuilt lazily after membership changes.
#[derive(Clone, Debug)]
pub struct Level {
    members: Vec<Genotype>,
    counts: PairCounts,
    tree: Option<LinkageTree>,
}

impl Level {
    fn new(genes: usize) -> Self {
        Level {
            members: Vec::new(),
            counts: PairCounts::new(genes),
            tree: None,
        }
    }

    pub fn members(&self) -> &[Genotype] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when the cached tree reflects the current membership.
    pub fn has_fresh_tree(&self) -> bool {
        self.tree.is_some()
    }

    /// Linkage tree of the current members, rebuilt if stale.
    pub fn tree(&mut self) -> Result<&LinkageTree> {
        if self.members.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        if self.counts.genes() < 2 {
            return Err(Error::TooFewGenes(self.counts.genes()));
        }
        if self.tree.is_none() {
            let n = self.counts.genes();
            self.tree = Some(LinkageTree::from_distances(n, &self.counts.distance_matrix()));
        }
        Ok(self.tree.as_ref().expect("just built"))
    }

    /// Members and tree together, for mixing.
    pub fn parts(&mut self) -> Result<(&[Genotype], &LinkageTree)> {
        self.tree()?;
        Ok((&self.members, self.tree.as_ref().expect("built above")))
    }
}

/// Ordered levels, bottom first. A genotype appears at most once in the
/// whole pyramid.
#[derive(Clone, Debug)]
pub struct Pyramid {
    genes: usize,
    levels: Vec<Level>,
    present: HashSet<Genotype>,
}

impl Pyramid {
    /// A pyramid with a single empty level.
    pub fn new(genes: usize) -> Self {
        Pyramid {
            genes,
            levels: vec![Level::new(genes)],
            present: HashSet::new(),
        }
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level_mut(&mut self, index: usize) -> &mut Level {
        &mut self.levels[index]
    }

    /// Total number of members across levels.
    pub fn size(&self) -> usize {
        self.present.len()
    }

    pub fn contains(&self, g: &Genotype) -> bool {
        self.present.contains(g)
    }

    /// Adds `g` to level `index`; `index == level_count()` first adds a new
    /// top level.
    pub fn insert(&mut self, index: usize, g: Genotype) -> Result<()> {
        if g.len() != self.genes {
            return Err(Error::LengthMismatch {
                expected: self.genes,
                found: g.len(),
            });
        }
        if index > self.levels.len() {
            return Err(Error::LevelOutOfRange {
                index,
                levels: self.levels.len(),
            });
        }
        if self.present.contains(&g) {
            return Err(Error::DuplicateGenotype);
        }
        if index == self.levels.len() {
            self.levels.push(Level::new(self.genes));
        }
        let level = &mut self.levels[index];
        level.counts.add(&g);
        level.tree = None;
        level.members.push(g.clone());
        self.present.insert(g);
        Ok(())
    }

    /// Checks that no genotype occurs twice across all levels.
    pub fn is_duplicate_free(&self) -> bool {
        let mut seen = HashSet::new();
        let all = self.levels.iter().flat_map(|l| l.members.iter());
        all.clone().all(|g| seen.insert(g)) && seen.len() == self.present.len()
    }
}
