//! Bulk commodity production planning.
//!
//! Each bit of a genotype stands for one job (one execution of a recipe).
//! Genotypes are repaired so that every order is covered with no redundant
//! job, the selected jobs are scheduled on the resources of each recipe's
//! hall, and the objectives are (makespan, total surplus), both minimized.
//!
//! Instances are stored as TOML; see the README for the schema.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gateway::Problem;
use crate::solution::{Genotype, ObjectiveVector};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hall {
    /// Number of identical resources (machines) in the hall.
    pub resources: usize,
    /// Commodities the hall can produce.
    pub commodities: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Commodity {
    /// Ordered amount, in units.
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Yield {
    pub commodity: usize,
    pub amount: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Recipe {
    /// Execution time of one job.
    pub time: u64,
    pub hall: usize,
    pub yields: Vec<Yield>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobcppInstance {
    pub halls: Vec<Hall>,
    pub commodities: Vec<Commodity>,
    pub recipes: Vec<Recipe>,
}

impl MobcppInstance {
    /// Single-hall instance with `resources` machines producing every commodity.
    pub fn single_hall(resources: usize, orders: &[u64], recipes: Vec<Recipe>) -> Result<Self> {
        let inst = MobcppInstance {
            halls: vec![Hall {
                resources,
                commodities: (0..orders.len()).collect(),
            }],
            commodities: orders.iter().map(|&order| Commodity { order }).collect(),
            recipes,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if self.halls.is_empty() || self.commodities.is_empty() || self.recipes.is_empty() {
            return bad("halls, commodities and recipes must be non-empty".into());
        }
        for (h, hall) in self.halls.iter().enumerate() {
            if hall.resources == 0 {
                return bad(format!("hall {h} has no resources"));
            }
            if let Some(&c) = hall.commodities.iter().find(|&&c| c >= self.commodities.len()) {
                return bad(format!("hall {h} lists unknown commodity {c}"));
            }
        }
        for (j, c) in self.commodities.iter().enumerate() {
            if c.order == 0 {
                return bad(format!("commodity {j} has a zero order"));
            }
        }
        for (i, r) in self.recipes.iter().enumerate() {
            if r.time == 0 {
                return bad(format!("recipe {i} has zero execution time"));
            }
            if r.hall >= self.halls.len() {
                return bad(format!("recipe {i} refers to unknown hall {}", r.hall));
            }
            if r.yields.is_empty() {
                return bad(format!("recipe {i} yields nothing"));
            }
            for (a, y) in r.yields.iter().enumerate() {
                if y.commodity >= self.commodities.len() || y.amount == 0 {
                    return bad(format!("recipe {i} has an invalid yield"));
                }
                if r.yields[..a].iter().any(|o| o.commodity == y.commodity) {
                    return bad(format!("recipe {i} lists commodity {} twice", y.commodity));
                }
                if !self.halls[r.hall].commodities.contains(&y.commodity) {
                    return bad(format!(
                        "recipe {i} yields commodity {} which hall {} cannot produce",
                        y.commodity, r.hall
                    ));
                }
            }
        }
        for j in 0..self.commodities.len() {
            if !self.recipes.iter().any(|r| r.yields.iter().any(|y| y.commodity == j)) {
                return bad(format!("commodity {j} is not produced by any recipe"));
            }
        }
        Ok(())
    }

    /// Upper bound on useful jobs of recipe `i`: the largest
    /// `ceil(order / amount)` over the commodities it yields.
    pub fn max_jobs(&self, recipe: usize) -> usize {
        self.recipes[recipe]
            .yields
            .iter()
            .map(|y| self.commodities[y.commodity].order.div_ceil(y.amount) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let inst: MobcppInstance =
            toml::from_str(text).map_err(|e| Error::InvalidInstance(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("instance serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_toml())?;
        Ok(())
    }
}

/// Bit range of one recipe in the genotype.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    pub recipe: usize,
    /// Lowest-index commodity the recipe yields.
    pub anchor: usize,
    pub offset: usize,
    pub bits: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EncodingLayout {
    groups: Vec<Group>,
    len: usize,
}

impl EncodingLayout {
    /// Groups ordered by anchor commodity, then recipe index; recipe `i`
    /// gets `max_jobs(i)` bits.
    pub fn new(instance: &MobcppInstance) -> Result<Self> {
        let bits = (0..instance.recipes.len()).map(|i| instance.max_jobs(i)).collect();
        Self::with_bits(instance, bits)
    }

    /// Same ordering with explicit per-recipe bit counts (indexed by recipe).
    /// Every order must be coverable with all bits set.
    pub fn with_bits(instance: &MobcppInstance, bits: Vec<usize>) -> Result<Self> {
        instance.validate()?;
        if bits.len() != instance.recipes.len() {
            return Err(Error::InvalidConfig(format!(
                "expected {} bit counts, got {}",
                instance.recipes.len(),
                bits.len()
            )));
        }
        let mut capacity = vec![0u64; instance.commodities.len()];
        for (r, &b) in instance.recipes.iter().zip(&bits) {
            for y in &r.yields {
                capacity[y.commodity] += y.amount * b as u64;
            }
        }
        if let Some(j) = (0..capacity.len()).find(|&j| capacity[j] < instance.commodities[j].order) {
            return Err(Error::InvalidConfig(format!("layout cannot cover the order of commodity {j}")));
        }
        let mut order: Vec<(usize, usize)> = instance
            .recipes
            .iter()
            .enumerate()
            .map(|(i, r)| (r.yields.iter().map(|y| y.commodity).min().expect("validated"), i))
            .collect();
        order.sort_unstable();
        let mut groups = Vec::with_capacity(order.len());
        let mut offset = 0;
        for (anchor, recipe) in order {
            groups.push(Group {
                recipe,
                anchor,
                offset,
                bits: bits[recipe],
            });
            offset += bits[recipe];
        }
        Ok(EncodingLayout { groups, len: offset })
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit counts in genotype order.
    pub fn bit_counts(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.bits).collect()
    }
}

/// Evaluable problem: an instance together with its encoding.
#[derive(Clone, Debug)]
pub struct Mobcpp {
    instance: MobcppInstance,
    layout: EncodingLayout,
    gene_recipe: Vec<usize>,
}

impl Mobcpp {
    pub fn new(instance: MobcppInstance) -> Result<Self> {
        let layout = EncodingLayout::new(&instance)?;
        Ok(Self::with_layout(instance, layout))
    }

    pub fn with_layout(instance: MobcppInstance, layout: EncodingLayout) -> Self {
        let mut gene_recipe = Vec::with_capacity(layout.len());
        for g in layout.groups() {
            gene_recipe.extend(std::iter::repeat_n(g.recipe, g.bits));
        }
        Mobcpp {
            instance,
            layout,
            gene_recipe,
        }
    }

    pub fn instance(&self) -> &MobcppInstance {
        &self.instance
    }

    pub fn layout(&self) -> &EncodingLayout {
        &self.layout
    }

    /// Produced amount per commodity.
    pub fn production(&self, g: &Genotype) -> Vec<u64> {
        let mut plan = vec![0u64; self.instance.commodities.len()];
        for gene in g.ones_positions() {
            for y in &self.instance.recipes[self.gene_recipe[gene]].yields {
                plan[y.commodity] += y.amount;
            }
        }
        plan
    }

    pub fn is_feasible(&self, g: &Genotype) -> bool {
        self.production(g)
            .iter()
            .zip(&self.instance.commodities)
            .all(|(&p, c)| p >= c.order)
    }

    /// One left-to-right pass: a gene is set if some order it serves is
    /// under-produced, cleared if every order it serves stays covered
    /// without it, and left alone otherwise. Returns whether anything changed.
    pub fn repair_pass(&self, g: &mut Genotype, plan: &mut [u64]) -> bool {
        let mut changed = false;
        for gene in 0..g.len() {
            let recipe = &self.instance.recipes[self.gene_recipe[gene]];
            let mut decision = -1i8;
            for y in &recipe.yields {
                let todo = self.instance.commodities[y.commodity].order;
                let planned = plan[y.commodity];
                if todo > planned {
                    decision = 1;
                }
                if decision == -1 && todo + y.amount > planned {
                    decision = 0;
                }
            }
            let want = match decision {
                1 => true,
                -1 => false,
                _ => continue,
            };
            if g.get(gene) != want {
                g.set(gene, want);
                changed = true;
                for y in &recipe.yields {
                    if want {
                        plan[y.commodity] += y.amount;
                    } else {
                        plan[y.commodity] -= y.amount;
                    }
                }
            }
        }
        changed
    }

    /// Repeats [`Mobcpp::repair_pass`] until a pass changes nothing. The
    /// result covers every order and no selected job can be dropped.
    pub fn repair(&self, g: &Genotype) -> Genotype {
        let mut out = g.clone();
        let mut plan = self.production(g);
        while self.repair_pass(&mut out, &mut plan) {}
        out
    }

    /// Jobs per recipe selected by `g`.
    pub fn job_counts(&self, g: &Genotype) -> Vec<usize> {
        let mut counts = vec![0; self.instance.recipes.len()];
        for gene in g.ones_positions() {
            counts[self.gene_recipe[gene]] += 1;
        }
        counts
    }

    /// Longest-processing-time-first: jobs by decreasing time (ties by recipe
    /// index), each onto the least-loaded resource of its recipe's hall
    /// (ties by resource index). Returns the makespan.
    pub fn schedule(&self, job_counts: &[usize]) -> u64 {
        let mut jobs: Vec<(u64, usize)> = Vec::new();
        for (i, &n) in job_counts.iter().enumerate() {
            jobs.extend(std::iter::repeat_n((self.instance.recipes[i].time, i), n));
        }
        jobs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut loads: Vec<Vec<u64>> = self.instance.halls.iter().map(|h| vec![0; h.resources]).collect();
        for (time, recipe) in jobs {
            let hall = &mut loads[self.instance.recipes[recipe].hall];
            let slot = (0..hall.len()).min_by_key(|&k| (hall[k], k)).expect("hall has resources");
            hall[slot] += time;
        }
        loads.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Objectives of an already repaired genotype.
    pub fn objectives_of_repaired(&self, repaired: &Genotype) -> ObjectiveVector {
        let makespan = self.schedule(&self.job_counts(repaired));
        let surplus: u64 = self
            .production(repaired)
            .iter()
            .zip(&self.instance.commodities)
            .map(|(&p, c)| p.saturating_sub(c.order))
            .sum();
        ObjectiveVector::pair(makespan as f64, surplus as f64)
    }
}

impl Problem for Mobcpp {
    fn name(&self) -> String {
        "mobcpp".into()
    }

    fn genotype_len(&self) -> usize {
        self.layout.len()
    }

    fn evaluate(&self, g: &Genotype) -> ObjectiveVector {
        self.objectives_of_repaired(&self.repair(g))
    }
}

/// Generator settings. Ranges are inclusive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobcppParams {
    pub halls: usize,
    /// Total resources, spread over the halls (each hall gets at least one).
    pub resources: usize,
    pub commodities: usize,
    pub recipes: usize,
    pub order_range: (u64, u64),
    pub yield_range: (u64, u64),
    pub time_range: (u64, u64),
    /// Chance that a recipe also yields a second commodity of its hall.
    pub multi_commodity: f64,
}

impl MobcppParams {
    pub fn single_hall(resources: usize, commodities: usize, recipes: usize) -> Self {
        MobcppParams {
            halls: 1,
            resources,
            commodities,
            recipes,
            order_range: (30, 120),
            yield_range: (10, 40),
            time_range: (5, 60),
            multi_commodity: 0.2,
        }
    }

    pub fn multi_hall(halls: usize, resources: usize, commodities: usize, recipes: usize) -> Self {
        MobcppParams {
            halls,
            ..Self::single_hall(resources, commodities, recipes)
        }
    }
}

pub fn generate_mobcpp_instance(params: &MobcppParams, seed: u64) -> Result<MobcppInstance> {
    let p = params;
    let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
    if p.halls == 0 || p.commodities == 0 {
        return bad("need at least one hall and one commodity");
    }
    if p.resources < p.halls {
        return bad("every hall needs at least one resource");
    }
    if p.commodities < p.halls {
        return bad("every hall needs at least one commodity");
    }
    if p.recipes < p.commodities {
        return bad("every commodity needs a recipe, so recipes must be >= commodities");
    }
    let ordered = |r: (u64, u64)| r.0 >= 1 && r.0 <= r.1;
    if !ordered(p.order_range) || !ordered(p.yield_range) || !ordered(p.time_range) {
        return bad("ranges must be positive and ordered");
    }
    if !(0.0..=1.0).contains(&p.multi_commodity) {
        return bad("multi-commodity probability must be in [0, 1]");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut halls: Vec<Hall> = (0..p.halls)
        .map(|h| Hall {
            resources: p.resources / p.halls + usize::from(h < p.resources % p.halls),
            commodities: Vec::new(),
        })
        .collect();
    // contiguous partition of the commodities
    for j in 0..p.commodities {
        halls[j * p.halls / p.commodities].commodities.push(j);
    }
    let hall_of: Vec<usize> = (0..p.commodities).map(|j| j * p.halls / p.commodities).collect();
    let commodities: Vec<Commodity> = (0..p.commodities)
        .map(|_| Commodity {
            order: rng.gen_range(p.order_range.0..=p.order_range.1),
        })
        .collect();

    // the first recipes cover each commodity once, the rest pick at random
    let mut primaries: Vec<usize> = (0..p.commodities).collect();
    primaries.extend((p.commodities..p.recipes).map(|_| rng.gen_range(0..p.commodities)));
    primaries.sort_unstable();
    let mut recipes = Vec::with_capacity(p.recipes);
    for primary in primaries {
        let hall = hall_of[primary];
        let mut yields = vec![Yield {
            commodity: primary,
            amount: rng.gen_range(p.yield_range.0..=p.yield_range.1),
        }];
        let others: Vec<usize> = halls[hall].commodities.iter().copied().filter(|&c| c != primary).collect();
        if !others.is_empty() && rng.gen_bool(p.multi_commodity) {
            let &second = others.choose(&mut rng).expect("non-empty");
            yields.push(Yield {
                commodity: second,
                amount: rng.gen_range(p.yield_range.0..=p.yield_range.1),
            });
        }
        recipes.push(Recipe {
            time: rng.gen_range(p.time_range.0..=p.time_range.1),
            hall,
            yields,
        });
    }
    let inst = MobcppInstance {
        halls,
        commodities,
        recipes,
    };
    inst.validate()?;
    Ok(inst)
}
