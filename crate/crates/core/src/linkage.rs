//! Linkage learning: the mutual-information dependency structure matrix (DSM)
//! and the linkage tree obtained from it by agglomerative clustering.
//!
//! Probabilities are pair/marginal frequencies over a population. Terms with
//! a zero joint or marginal probability contribute nothing. Natural logarithm
//! throughout.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::solution::Genotype;

/// Symmetric gene-by-gene matrix; the diagonal is unused and kept at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Dsm {
    n: usize,
    values: Vec<f64>,
}

impl Dsm {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }
}

/// Joint statistics of a population: per-gene count of ones and per-pair
/// count of (1, 1). The other cells of each 2x2 table follow from these.
/// Supports incremental insertion, which is how pyramid levels keep it.
#[derive(Clone, Debug)]
pub struct PairCounts {
    genes: usize,
    population: u32,
    ones: Vec<u32>,
    both: Vec<u32>,
}

impl PairCounts {
    pub fn new(genes: usize) -> Self {
        PairCounts {
            genes,
            population: 0,
            ones: vec![0; genes],
            both: vec![0; genes * genes],
        }
    }

    pub fn from_population(population: &[Genotype]) -> Result<Self> {
        let first = population.first().ok_or(Error::EmptyPopulation)?;
        let mut counts = PairCounts::new(first.len());
        for g in population {
            if g.len() != counts.genes {
                return Err(Error::LengthMismatch {
                    expected: counts.genes,
                    found: g.len(),
                });
            }
            counts.add(g);
        }
        Ok(counts)
    }

    pub fn genes(&self) -> usize {
        self.genes
    }

    pub fn population(&self) -> usize {
        self.population as usize
    }

    pub fn add(&mut self, g: &Genotype) {
        debug_assert_eq!(g.len(), self.genes);
        self.population += 1;
        let set: Vec<usize> = g.ones_positions().collect();
        for (a, &i) in set.iter().enumerate() {
            self.ones[i] += 1;
            let row = i * self.genes;
            for &j in &set[a + 1..] {
                self.both[row + j] += 1;
            }
        }
    }

    /// Joint probabilities `[p00, p01, p10, p11]` and marginals `p_i(1)`, `p_j(1)`.
    fn table(&self, i: usize, j: usize) -> ([f64; 4], f64, f64) {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let n = self.population as f64;
        let n11 = self.both[lo * self.genes + hi];
        let (ni, nj) = (self.ones[i], self.ones[j]);
        let n10 = ni - n11;
        let n01 = nj - n11;
        let n00 = self.population - n11 - n10 - n01;
        (
            [n00 as f64 / n, n01 as f64 / n, n10 as f64 / n, n11 as f64 / n],
            ni as f64 / n,
            nj as f64 / n,
        )
    }

    fn information_and_entropy(&self, i: usize, j: usize) -> (f64, f64) {
        let (joint, pi1, pj1) = self.table(i, j);
        let pi = [1.0 - pi1, pi1];
        let pj = [1.0 - pj1, pj1];
        let mut info = 0.0;
        let mut entropy = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                let p = joint[a * 2 + b];
                if p > 0.0 {
                    entropy -= p * p.ln();
                    let marg = pi[a] * pj[b];
                    if marg > 0.0 {
                        info += p * (p / marg).ln();
                    }
                }
            }
        }
        (info, entropy)
    }

    pub fn mutual_information(&self, i: usize, j: usize) -> f64 {
        self.information_and_entropy(i, j).0.max(0.0)
    }

    pub fn joint_entropy(&self, i: usize, j: usize) -> f64 {
        self.information_and_entropy(i, j).1
    }

    /// `(H - I) / H`, or 0 when the joint entropy vanishes.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (info, entropy) = self.information_and_entropy(i, j);
        if entropy == 0.0 {
            0.0
        } else {
            ((entropy - info) / entropy).clamp(0.0, 1.0)
        }
    }

    pub fn dsm(&self) -> Dsm {
        let n = self.genes;
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = self.mutual_information(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Dsm { n, values }
    }

    /// Row-major n x n pairwise distance matrix (diagonal 0).
    pub fn distance_matrix(&self) -> Vec<f64> {
        let n = self.genes;
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = self.distance(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        values
    }
}

pub fn build_dsm(population: &[Genotype]) -> Result<Dsm> {
    Ok(PairCounts::from_population(population)?.dsm())
}

pub fn pairwise_distance(population: &[Genotype], i: usize, j: usize) -> Result<f64> {
    let counts = PairCounts::from_population(population)?;
    if i >= counts.genes || j >= counts.genes {
        return Err(Error::InvalidConfig(format!(
            "gene index out of range for length {}",
            counts.genes
        )));
    }
    Ok(counts.distance(i, j))
}

pub fn build_linkage_tree(population: &[Genotype]) -> Result<LinkageTree> {
    let counts = PairCounts::from_population(population)?;
    if counts.genes < 2 {
        return Err(Error::TooFewGenes(counts.genes));
    }
    Ok(LinkageTree::from_distances(counts.genes, &counts.distance_matrix()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    /// Member gene indexes, ascending.
    pub genes: Vec<usize>,
    /// Ids of the two merged clusters (smaller id first); `None` for leaves.
    pub children: Option<(usize, usize)>,
    /// Distance at which the children were merged; 0 for leaves.
    pub distance: f64,
}

/// Clusters in creation order: ids `0..n` are the singleton leaves, every
/// following id is a merge, and the last one is the root.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkageTree {
    clusters: Vec<Cluster>,
}

impl LinkageTree {
    /// Agglomerative clustering with the size-weighted reduction
    /// `D(k, i+j) = |i|/(|i|+|j|) D(k, i) + |j|/(|i|+|j|) D(k, j)`.
    ///
    /// Always merges the closest pair; ties go to the pair with the smallest
    /// (lower id, higher id). Each active cluster caches its nearest partner,
    /// so only rows touched by a merge are rescanned.
    pub fn from_distances(n: usize, distances: &[f64]) -> Self {
        assert_eq!(distances.len(), n * n, "distance matrix must be n x n");
        let mut clusters: Vec<Cluster> = (0..n)
            .map(|i| Cluster {
                genes: vec![i],
                children: None,
                distance: 0.0,
            })
            .collect();
        if n < 2 {
            return LinkageTree { clusters };
        }

        let mut d = distances.to_vec();
        let mut id: Vec<usize> = (0..n).collect();
        let mut size: Vec<usize> = vec![1; n];
        let mut active: Vec<bool> = vec![true; n];
        let mut best: Vec<(f64, usize)> = vec![(f64::INFINITY, usize::MAX); n];

        let nearest = |s: usize, d: &[f64], id: &[usize], active: &[bool]| -> (f64, usize) {
            let mut out = (f64::INFINITY, usize::MAX);
            for t in 0..n {
                if t == s || !active[t] {
                    continue;
                }
                let v = d[s * n + t];
                if out.1 == usize::MAX || v < out.0 || (v == out.0 && id[t] < id[out.1]) {
                    out = (v, t);
                }
            }
            out
        };
        for s in 0..n {
            best[s] = nearest(s, &d, &id, &active);
        }

        for _ in 1..n {
            // global closest pair under the (distance, lower id, higher id) key
            let mut pick: Option<(f64, usize, usize, usize, usize)> = None;
            for s in (0..n).filter(|&s| active[s]) {
                let (v, t) = best[s];
                let (lo, hi) = if id[s] < id[t] { (id[s], id[t]) } else { (id[t], id[s]) };
                let better = match pick {
                    None => true,
                    Some((pv, plo, phi, _, _)) => (v, lo, hi) < (pv, plo, phi),
                };
                if better {
                    pick = Some((v, lo, hi, s, t));
                }
            }
            let (dist, lo, hi, s, t) = pick.expect("at least two active clusters");
            let (keep, gone) = (s, t);

            let new_id = clusters.len();
            let mut genes = clusters[lo].genes.clone();
            genes.extend_from_slice(&clusters[hi].genes);
            genes.sort_unstable();
            clusters.push(Cluster {
                genes,
                children: Some((lo, hi)),
                distance: dist,
            });

            let (sk, sg) = (size[keep], size[gone]);
            let total = (sk + sg) as f64;
            let (wk, wg) = (sk as f64 / total, sg as f64 / total);
            active[gone] = false;
            id[keep] = new_id;
            size[keep] = sk + sg;
            for k in (0..n).filter(|&k| active[k] && k != keep) {
                let merged = wk * d[k * n + keep] + wg * d[k * n + gone];
                d[k * n + keep] = merged;
                d[keep * n + k] = merged;
            }
            for k in (0..n).filter(|&k| active[k] && k != keep) {
                if best[k].1 == keep || best[k].1 == gone {
                    best[k] = nearest(k, &d, &id, &active);
                } else if d[k * n + keep] < best[k].0 {
                    // the new cluster has the largest id, so it only wins strictly
                    best[k] = (d[k * n + keep], keep);
                }
            }
            best[keep] = nearest(keep, &d, &id, &active);
        }
        LinkageTree { clusters }
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn leaf_count(&self) -> usize {
        self.clusters.iter().take_while(|c| c.children.is_none()).count()
    }

    pub fn root(&self) -> &Cluster {
        self.clusters.last().expect("tree has at least one cluster")
    }

    /// Every cluster except the root, in creation order.
    pub fn mixing_clusters(&self) -> &[Cluster] {
        &self.clusters[..self.clusters.len() - 1]
    }

    /// Child id pairs of the internal clusters in merge order.
    pub fn merges(&self) -> Vec<(usize, usize)> {
        self.clusters.iter().filter_map(|c| c.children).collect()
    }

    /// Indented dump, one cluster per line, root first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_node(self.clusters.len() - 1, 0, &mut out);
        out
    }

    fn render_node(&self, index: usize, depth: usize, out: &mut String) {
        let c = &self.clusters[index];
        let genes: Vec<String> = c.genes.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(
            out,
            "{:indent$}#{index} {{{}}} d={:.4}",
            "",
            genes.join(","),
            c.distance,
            indent = depth * 2
        );
        if let Some((a, b)) = c.children {
            self.render_node(a, depth + 1, out);
            self.render_node(b, depth + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pop(rows: &[&str]) -> Vec<Genotype> {
        rows.iter().map(|r| Genotype::parse(r).unwrap()).collect()
    }

    fn table_population() -> Vec<Genotype> {
        pop(&["0101", "0101", "1111", "1101", "0011"])
    }

    /// Mutual information and joint entropy straight from a list of column
    /// pairs, without going through `PairCounts`.
    fn direct_info_entropy(xs: &[u8], ys: &[u8]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mut joint = [[0.0f64; 2]; 2];
        for (&x, &y) in xs.iter().zip(ys) {
            joint[x as usize][y as usize] += 1.0 / n;
        }
        let px = [joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]];
        let py = [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]];
        let (mut i, mut h) = (0.0, 0.0);
        for a in 0..2 {
            for b in 0..2 {
                let p = joint[a][b];
                if p > 0.0 {
                    h -= p * p.ln();
                    if px[a] > 0.0 && py[b] > 0.0 {
                        i += p * (p / (px[a] * py[b])).ln();
                    }
                }
            }
        }
        (i, h)
    }

    fn column(population: &[Genotype], i: usize) -> Vec<u8> {
        population.iter().map(|g| g.bits()[i]).collect()
    }

    #[test]
    fn dsm_of_example_population() {
        let dsm = build_dsm(&table_population()).unwrap();
        assert!((dsm.get(0, 1) - 0.12).abs() <= 0.005);
        assert!((dsm.get(1, 2) - 0.22).abs() <= 0.005);
        // .4 ln(.4/.36) + 2 * .2 ln(.2/.24) + .2 ln(.2/.16)
        let i13 = 0.4 * (0.4f64 / 0.36).ln() + 0.4 * (0.2f64 / 0.24).ln() + 0.2 * (0.2f64 / 0.16).ln();
        assert!((dsm.get(0, 2) - i13).abs() < 1e-12);
        assert!((dsm.get(0, 2) - 0.013_84).abs() < 1e-5);
        for i in 0..3 {
            assert!(dsm.get(i, 3).abs() < 1e-12);
        }
    }

    #[test]
    fn distances_match_closed_form() {
        // I(G1,G2) = .4 ln(.4/.48) + .4 ln(.4/.32) + .2 ln(.2/.12)
        // H(G1,G2) = -(2 * .4 ln .4 + .2 ln .2)
        let i12 = 0.4 * (0.4f64 / 0.48).ln() + 0.4 * (0.4f64 / 0.32).ln() + 0.2 * (0.2f64 / 0.12).ln();
        let h12 = -(0.8 * 0.4f64.ln() + 0.2 * 0.2f64.ln());
        let i23 = 0.6 * 1.25f64.ln() + 0.2 * 0.625f64.ln() + 0.2 * 2.5f64.ln();
        let h23 = -(0.6 * 0.6f64.ln() + 0.4 * 0.2f64.ln());
        let p = table_population();
        let d12 = pairwise_distance(&p, 0, 1).unwrap();
        let d23 = pairwise_distance(&p, 1, 2).unwrap();
        assert!((d12 - (h12 - i12) / h12).abs() < 1e-12);
        assert!((d23 - (h23 - i23) / h23).abs() < 1e-12);
        assert!((d12 - 0.887_68).abs() < 1e-5);
        assert!((d23 - 0.765_18).abs() < 1e-5);
        assert!((pairwise_distance(&p, 0, 2).unwrap() - 0.989_61).abs() < 1e-5);
        for i in 0..3 {
            assert_eq!(pairwise_distance(&p, i, 3).unwrap(), 1.0);
        }
    }

    #[test]
    fn identical_population_has_zero_dsm_and_distances() {
        let p = pop(&["0110", "0110", "0110"]);
        let dsm = build_dsm(&p).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(dsm.get(i, j), 0.0);
            }
        }
        assert_eq!(pairwise_distance(&p, 0, 1).unwrap(), 0.0);
    }

    #[test]
    fn copied_gene_information_equals_entropy() {
        // gene 0 and gene 1 identical, p(1) = 1/4
        let p = pop(&["110", "000", "001", "001"]);
        let h = -(0.25f64 * 0.25f64.ln() + 0.75 * 0.75f64.ln());
        let dsm = build_dsm(&p).unwrap();
        assert!((dsm.get(0, 1) - h).abs() < 1e-12);
        assert_eq!(pairwise_distance(&p, 0, 1).unwrap(), 0.0);
    }

    #[test]
    fn independent_fair_genes_are_at_distance_one() {
        let p = pop(&["00", "01", "10", "11"]);
        assert!((pairwise_distance(&p, 0, 1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(build_dsm(&[]), Err(Error::EmptyPopulation)));
        assert!(matches!(build_linkage_tree(&pop(&["1", "0"])), Err(Error::TooFewGenes(1))));
        assert!(build_dsm(&pop(&["01", "011"])).is_err());
    }

    #[test]
    fn table_tree_merge_order() {
        let tree = build_linkage_tree(&table_population()).unwrap();
        assert_eq!(tree.clusters().len(), 7);
        assert_eq!(tree.merges(), vec![(1, 2), (0, 4), (3, 5)]);
        assert!((tree.clusters()[4].distance - 0.765).abs() < 0.001);
        // (D(G1,G2) + D(G1,G3)) / 2
        assert!((tree.clusters()[5].distance - 0.938_64).abs() < 1e-5);
        assert_eq!(tree.root().genes, vec![0, 1, 2, 3]);
    }

    #[test]
    fn two_gene_tree() {
        let tree = build_linkage_tree(&pop(&["01", "10"])).unwrap();
        assert_eq!(tree.clusters().len(), 3);
        assert_eq!(tree.mixing_clusters().len(), 2);
        assert_eq!(tree.root().genes, vec![0, 1]);
    }

    #[test]
    fn constant_blocks_cluster_before_root() {
        // genes 0..3 copy column A, genes 3..6 copy column B
        let a = [0u8, 1, 1, 0, 1, 0, 0, 1];
        let b = [1u8, 1, 0, 0, 1, 1, 0, 0];
        let p: Vec<Genotype> = (0..8)
            .map(|r| Genotype::from_bits(&[a[r], a[r], a[r], b[r], b[r], b[r]]).unwrap())
            .collect();
        // brute-force distance table: zero within blocks, positive across
        for i in 0..6 {
            for j in 0..6 {
                if i == j {
                    continue;
                }
                let (info, h) = direct_info_entropy(&column(&p, i), &column(&p, j));
                let d = (h - info) / h;
                if (i < 3) == (j < 3) {
                    assert!(d.abs() < 1e-12);
                } else {
                    assert!(d > 0.5);
                }
            }
        }
        let tree = build_linkage_tree(&p).unwrap();
        let internal: Vec<&Vec<usize>> = tree.mixing_clusters().iter().map(|c| &c.genes).collect();
        assert!(internal.contains(&&vec![0, 1, 2]));
        assert!(internal.contains(&&vec![3, 4, 5]));
    }

    #[test]
    fn render_lists_every_cluster() {
        let tree = build_linkage_tree(&table_population()).unwrap();
        let text = tree.render();
        assert_eq!(text.lines().count(), 7);
        assert!(text.starts_with("#6 {0,1,2,3}"));
    }

    #[test]
    fn incremental_counts_match_batch() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p: Vec<Genotype> = (0..30).map(|_| Genotype::random(9, &mut rng)).collect();
        let mut inc = PairCounts::new(9);
        for g in &p {
            inc.add(g);
        }
        assert_eq!(inc.dsm(), build_dsm(&p).unwrap());
        for i in 0..9 {
            for j in 0..9 {
                if i != j {
                    let (info, h) = direct_info_entropy(&column(&p, i), &column(&p, j));
                    assert!((inc.mutual_information(i, j) - info.max(0.0)).abs() < 1e-12);
                    assert!((inc.joint_entropy(i, j) - h).abs() < 1e-12);
                }
            }
        }
    }

    /// Textbook O(n^3) agglomeration: scan all active pairs each round.
    fn naive_merges(n: usize, dist: &[f64]) -> Vec<(usize, usize, f64)> {
        let mut active: Vec<(usize, usize)> = (0..n).map(|i| (i, 1)).collect();
        let mut d = std::collections::HashMap::new();
        for i in 0..n {
            for j in 0..n {
                d.insert((i, j), dist[i * n + j]);
            }
        }
        let mut next = n;
        let mut out = Vec::new();
        while active.len() > 1 {
            let mut best: Option<(f64, usize, usize)> = None;
            for x in 0..active.len() {
                for y in x + 1..active.len() {
                    let (a, b) = (active[x].0.min(active[y].0), active[x].0.max(active[y].0));
                    let v = d[&(a, b)];
                    if best.is_none_or(|bb| (v, a, b) < bb) {
                        best = Some((v, a, b));
                    }
                }
            }
            let (v, a, b) = best.unwrap();
            let sa = active.iter().find(|c| c.0 == a).unwrap().1;
            let sb = active.iter().find(|c| c.0 == b).unwrap().1;
            active.retain(|c| c.0 != a && c.0 != b);
            let total = (sa + sb) as f64;
            for &(k, _) in &active {
                let m = (sa as f64 / total) * d[&(k, a)] + (sb as f64 / total) * d[&(k, b)];
                d.insert((k, next), m);
                d.insert((next, k), m);
            }
            active.push((next, sa + sb));
            out.push((a, b, v));
            next += 1;
        }
        out
    }

    #[test]
    fn cached_clustering_equals_naive_on_random_populations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..40 {
            let n = rng.gen_range(2..=64);
            let size = rng.gen_range(1..40);
            let p: Vec<Genotype> = (0..size).map(|_| Genotype::random(n, &mut rng)).collect();
            let counts = PairCounts::from_population(&p).unwrap();
            let dist = counts.distance_matrix();
            let tree = LinkageTree::from_distances(n, &dist);
            let got: Vec<(usize, usize, f64)> = tree
                .clusters()
                .iter()
                .filter_map(|c| c.children.map(|(a, b)| (a, b, c.distance)))
                .collect();
            assert_eq!(got, naive_merges(n, &dist), "trial {trial}, n={n}");
        }
    }

    #[test]
    fn cached_clustering_equals_naive_with_heavy_ties() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(2..=24);
            let mut dist = vec![0.0; n * n];
            for i in 0..n {
                for j in i + 1..n {
                    let v = rng.gen_range(0..3) as f64 / 2.0;
                    dist[i * n + j] = v;
                    dist[j * n + i] = v;
                }
            }
            let tree = LinkageTree::from_distances(n, &dist);
            let got: Vec<(usize, usize, f64)> = tree
                .clusters()
                .iter()
                .filter_map(|c| c.children.map(|(a, b)| (a, b, c.distance)))
                .collect();
            assert_eq!(got, naive_merges(n, &dist));
        }
    }

    fn population_strategy() -> impl Strategy<Value = Vec<Genotype>> {
        (2usize..10).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u8..=1, n), 1..20)
                .prop_map(|rows| rows.iter().map(|r| Genotype::from_bits(r).unwrap()).collect())
        })
    }

    proptest! {
        #[test]
        fn dsm_is_symmetric_non_negative(p in population_strategy()) {
            let dsm = build_dsm(&p).unwrap();
            let n = dsm.size();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(dsm.get(i, j), dsm.get(j, i));
                    prop_assert!(dsm.get(i, j) >= 0.0);
                }
            }
        }

        #[test]
        fn dsm_is_permutation_equivariant(p in population_strategy(), seed in 0u64..1000) {
            let n = p[0].len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
            let permuted: Vec<Genotype> = p
                .iter()
                .map(|g| Genotype::from_bits(&perm.iter().map(|&k| g.bits()[k]).collect::<Vec<_>>()).unwrap())
                .collect();
            let a = build_dsm(&p).unwrap();
            let b = build_dsm(&permuted).unwrap();
            for i in 0..n {
                for j in 0..n {
                    prop_assert!((b.get(i, j) - a.get(perm[i], perm[j])).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn tree_structure_is_consistent(p in population_strategy()) {
            let n = p[0].len();
            let tree = build_linkage_tree(&p).unwrap();
            prop_assert_eq!(tree.clusters().len(), 2 * n - 1);
            prop_assert_eq!(tree.leaf_count(), n);
            for (i, c) in tree.clusters().iter().enumerate() {
                prop_assert!(c.distance >= 0.0 && c.distance <= 1.0);
                match c.children {
                    None => prop_assert_eq!(&c.genes, &vec![i]),
                    Some((a, b)) => {
                        prop_assert!(a < i && b < i);
                        let ca = &tree.clusters()[a].genes;
                        let cb = &tree.clusters()[b].genes;
                        prop_assert!(ca.iter().all(|g| !cb.contains(g)));
                        let mut union: Vec<usize> = ca.iter().chain(cb).copied().collect();
                        union.sort_unstable();
                        prop_assert_eq!(&union, &c.genes);
                    }
                }
            }
            prop_assert_eq!(&tree.root().genes, &(0..n).collect::<Vec<_>>());
        }
    }
}
