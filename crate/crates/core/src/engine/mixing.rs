//! Variation operators driven by a scalarized objective: first-improvement
//! hill climbing and optimal mixing against a level's linkage tree.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Evaluator;
use crate::error::Result;
use crate::linkage::LinkageTree;
use crate::solution::{Genotype, ObjectiveVector, WeightVector};

/// Order in which optimal mixing visits the tree's clusters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClusterOrder {
    /// Fresh shuffle on every call.
    #[default]
    Random,
    /// Creation order: leaves first, then merges.
    Creation,
}

/// Result of applying one cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixOutcome {
    /// Donor already agreed with the source on the cluster; nothing evaluated.
    Unchanged,
    Accepted,
    Rejected,
}

/// Single-bit-flip first-improvement hill climber. Each pass visits every
/// position in a fresh random order and keeps a flip iff it strictly lowers
/// the scalarized objective; stops after a pass without change.
pub fn fihc<R: Rng + ?Sized>(
    g: &mut Genotype,
    current: &mut ObjectiveVector,
    w: &WeightVector,
    evaluator: &mut Evaluator,
    rng: &mut R,
) -> Result<()> {
    let mut order: Vec<usize> = (0..g.len()).collect();
    loop {
        order.shuffle(rng);
        let mut improved = false;
        for &i in &order {
            g.flip(i);
            let e = evaluator.evaluate(g)?;
            let n = evaluator.normalizer();
            if n.scalarize(&e.objectives, w) < n.scalarize(current, w) {
                *current = e.objectives;
                improved = true;
            } else {
                g.flip(i);
            }
        }
        if !improved {
            return Ok(());
        }
    }
}

/// Copies `donor` into `source` at `genes`, evaluates, and reverts iff the
/// scalarized objective got strictly worse. Equal fitness keeps the change.
pub fn apply_cluster(
    source: &mut Genotype,
    current: &mut ObjectiveVector,
    genes: &[usize],
    donor: &Genotype,
    w: &WeightVector,
    evaluator: &mut Evaluator,
) -> Result<MixOutcome> {
    let changed: Vec<usize> = genes.iter().copied().filter(|&i| source.get(i) != donor.get(i)).collect();
    if changed.is_empty() {
        return Ok(MixOutcome::Unchanged);
    }
    for &i in &changed {
        source.flip(i);
    }
    let e = match evaluator.evaluate(source) {
        Ok(e) => e,
        Err(err) => {
            for &i in &changed {
                source.flip(i);
            }
            return Err(err);
        }
    };
    let n = evaluator.normalizer();
    if n.scalarize(&e.objectives, w) <= n.scalarize(current, w) {
        *current = e.objectives;
        Ok(MixOutcome::Accepted)
    } else {
        for &i in &changed {
            source.flip(i);
        }
        Ok(MixOutcome::Rejected)
    }
}

/// Optimal mixing of `source` with the members of one level: every tree
/// cluster except the root, each with a uniformly drawn donor.
#[allow(clippy::too_many_arguments)]
pub fn optimal_mix<R: Rng + ?Sized>(
    source: &mut Genotype,
    current: &mut ObjectiveVector,
    members: &[Genotype],
    tree: &LinkageTree,
    order: ClusterOrder,
    w: &WeightVector,
    evaluator: &mut Evaluator,
    rng: &mut R,
) -> Result<()> {
    let clusters = tree.mixing_clusters();
    let mut visit: Vec<usize> = (0..clusters.len()).collect();
    if order == ClusterOrder::Random {
        visit.shuffle(rng);
    }
    for c in visit {
        let donor = &members[rng.gen_range(0..members.len())];
        let before = current.clone();
        apply_cluster(source, current, &clusters[c].genes, donor, w, evaluator)?;
        debug_assert!({
            let n = evaluator.normalizer();
            n.scalarize(current, w) <= n.scalarize(&before, w)
        });
    }
    Ok(())
}
