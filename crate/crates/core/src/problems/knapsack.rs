//! Multi-objective 0/1 knapsack with a greedy ratio repair applied at
//! evaluation time. The genotype itself is never rewritten.
//!
//! File format: header `l m`, a line with the m capacities, then one line
//! per item `w1 p1 w2 p2 ...` (weight and profit for each knapsack).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::maxcut::parse_fields;
use crate::error::{Error, Result};
use crate::gateway::Problem;
use crate::solution::{Genotype, ObjectiveVector};

#[derive(Clone, Debug, PartialEq)]
pub struct KnapsackInstance {
    capacities: Vec<f64>,
    /// `weights[i][k]`, `profits[i][k]` for item i and knapsack k.
    weights: Vec<Vec<f64>>,
    profits: Vec<Vec<f64>>,
    /// Items sorted by (aggregate profit/weight ratio, index), cheapest first.
    removal_order: Vec<usize>,
}

impl KnapsackInstance {
    pub fn new(capacities: Vec<f64>, weights: Vec<Vec<f64>>, profits: Vec<Vec<f64>>) -> Result<Self> {
        let m = capacities.len();
        if m < 2 {
            return Err(Error::InvalidInstance("need at least two knapsacks".into()));
        }
        if weights.len() != profits.len() || weights.is_empty() {
            return Err(Error::InvalidInstance("weights and profits must list the same items".into()));
        }
        let positive = |v: &f64| v.is_finite() && *v > 0.0;
        if !capacities.iter().all(positive) {
            return Err(Error::InvalidInstance("capacities must be positive".into()));
        }
        for (i, (w, p)) in weights.iter().zip(&profits).enumerate() {
            if w.len() != m || p.len() != m {
                return Err(Error::InvalidInstance(format!("item {i} must have {m} weights and profits")));
            }
            if !w.iter().all(positive) || !p.iter().all(positive) {
                return Err(Error::InvalidInstance(format!("item {i} has a non-positive weight or profit")));
            }
        }
        let ratio = |i: usize| profits[i].iter().sum::<f64>() / weights[i].iter().sum::<f64>();
        let mut removal_order: Vec<usize> = (0..weights.len()).collect();
        removal_order.sort_by(|&a, &b| ratio(a).total_cmp(&ratio(b)).then(a.cmp(&b)));
        Ok(KnapsackInstance {
            capacities,
            weights,
            profits,
            removal_order,
        })
    }

    /// Uniform integer weights and profits in `10..=100`; each capacity is
    /// half the total item weight of its knapsack.
    pub fn generate(items: usize, knapsacks: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weights = Vec::with_capacity(items);
        let mut profits = Vec::with_capacity(items);
        for _ in 0..items {
            let mut w = Vec::with_capacity(knapsacks);
            let mut p = Vec::with_capacity(knapsacks);
            for _ in 0..knapsacks {
                w.push(rng.gen_range(10..=100) as f64);
                p.push(rng.gen_range(10..=100) as f64);
            }
            weights.push(w);
            profits.push(p);
        }
        let capacities = (0..knapsacks)
            .map(|k| weights.iter().map(|w: &Vec<f64>| w[k]).sum::<f64>() / 2.0)
            .collect();
        KnapsackInstance::new(capacities, weights, profits)
    }

    pub fn items(&self) -> usize {
        self.weights.len()
    }

    pub fn knapsacks(&self) -> usize {
        self.capacities.len()
    }

    pub fn capacities(&self) -> &[f64] {
        &self.capacities
    }

    /// Aggregate ratio `sum_k p[i][k] / sum_k w[i][k]` used by the repair.
    pub fn ratio(&self, item: usize) -> f64 {
        self.profits[item].iter().sum::<f64>() / self.weights[item].iter().sum::<f64>()
    }

    fn loads(&self, g: &Genotype) -> Vec<f64> {
        let mut loads = vec![0.0; self.knapsacks()];
        for i in g.ones_positions() {
            for (l, w) in loads.iter_mut().zip(&self.weights[i]) {
                *l += w;
            }
        }
        loads
    }

    pub fn is_feasible(&self, g: &Genotype) -> bool {
        self.loads(g).iter().zip(&self.capacities).all(|(l, c)| l <= c)
    }

    /// Repaired genotype plus the items removed, in removal order.
    pub fn repair_with_trace(&self, g: &Genotype) -> (Genotype, Vec<usize>) {
        let mut out = g.clone();
        let mut loads = self.loads(g);
        let mut removed = Vec::new();
        for &i in &self.removal_order {
            if loads.iter().zip(&self.capacities).all(|(l, c)| l <= c) {
                break;
            }
            if out.get(i) {
                out.set(i, false);
                for (l, w) in loads.iter_mut().zip(&self.weights[i]) {
                    *l -= w;
                }
                removed.push(i);
            }
        }
        (out, removed)
    }

    /// Deselects items, lowest ratio first (ties: lowest index), until every
    /// capacity holds.
    pub fn repair(&self, g: &Genotype) -> Genotype {
        self.repair_with_trace(g).0
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing {what}"),
            })
        };
        let (hn, header) = next("header")?;
        let head: Vec<usize> = parse_fields(hn, header)?;
        if head.len() != 2 {
            return Err(Error::Parse {
                line: hn,
                message: "header must be `l m`".into(),
            });
        }
        let (items, m) = (head[0], head[1]);
        let (cn, cap_line) = next("capacities")?;
        let capacities: Vec<f64> = parse_fields(cn, cap_line)?;
        if capacities.len() != m {
            return Err(Error::Parse {
                line: cn,
                message: format!("expected {m} capacities"),
            });
        }
        let mut weights = Vec::with_capacity(items);
        let mut profits = Vec::with_capacity(items);
        for _ in 0..items {
            let (n, line) = next("item line")?;
            let f: Vec<f64> = parse_fields(n, line)?;
            if f.len() != 2 * m {
                return Err(Error::Parse {
                    line: n,
                    message: format!("item line needs {} numbers", 2 * m),
                });
            }
            weights.push(f.chunks(2).map(|c| c[0]).collect());
            profits.push(f.chunks(2).map(|c| c[1]).collect());
        }
        if let Ok((n, _)) = next("") {
            return Err(Error::Parse {
                line: n,
                message: "more item lines than announced".into(),
            });
        }
        KnapsackInstance::new(capacities, weights, profits)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.items(), self.knapsacks());
        let caps: Vec<String> = self.capacities.iter().map(|c| c.to_string()).collect();
        out.push_str(&caps.join(" "));
        out.push('\n');
        for (w, p) in self.weights.iter().zip(&self.profits) {
            let fields: Vec<String> = w.iter().zip(p).map(|(w, p)| format!("{w} {p}")).collect();
            let _ = writeln!(out, "{}", fields.join(" "));
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }
}

impl Problem for KnapsackInstance {
    fn name(&self) -> String {
        "knapsack".into()
    }

    fn genotype_len(&self) -> usize {
        self.items()
    }

    fn objective_count(&self) -> usize {
        self.knapsacks()
    }

    fn evaluate(&self, g: &Genotype) -> ObjectiveVector {
        let repaired = self.repair(g);
        let mut totals = vec![0.0; self.knapsacks()];
        for i in repaired.ones_positions() {
            for (t, p) in totals.iter_mut().zip(&self.profits[i]) {
                *t -= p;
            }
        }
        ObjectiveVector::new(totals).expect("finite profits")
    }
}
