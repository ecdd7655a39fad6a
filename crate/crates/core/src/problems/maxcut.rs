//! Bi-objective weighted MAXCUT: one graph, two independent edge weight sets.
//!
//! File format: header `l edge_count`, then one `i j w1 w2` line per edge
//! with 0-based vertex indexes.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gateway::Problem;
use crate::solution::{Genotype, ObjectiveVector};

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w1: f64,
    pub w2: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxcutInstance {
    vertices: usize,
    edges: Vec<Edge>,
}

impl MaxcutInstance {
    pub fn new(vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &edges {
            if e.i >= vertices || e.j >= vertices {
                return Err(Error::InvalidInstance(format!(
                    "edge ({}, {}) outside {vertices} vertices",
                    e.i, e.j
                )));
            }
            if e.i == e.j {
                return Err(Error::InvalidInstance(format!("self-loop on vertex {}", e.i)));
            }
            if !(e.w1.is_finite() && e.w2.is_finite()) {
                return Err(Error::InvalidInstance("non-finite edge weight".into()));
            }
            if !seen.insert((e.i.min(e.j), e.i.max(e.j))) {
                return Err(Error::InvalidInstance(format!("duplicate edge ({}, {})", e.i, e.j)));
            }
        }
        Ok(MaxcutInstance { vertices, edges })
    }

    /// Random graph where each vertex pair is an edge with probability
    /// `density`; both weights uniform integers in `1..=max_weight`.
    pub fn generate(vertices: usize, density: f64, max_weight: u32, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) || max_weight == 0 {
            return Err(Error::InvalidConfig(
                "density must be in [0, 1] and max weight positive".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..vertices {
            for j in i + 1..vertices {
                if rng.gen_bool(density) {
                    edges.push(Edge {
                        i,
                        j,
                        w1: rng.gen_range(1..=max_weight) as f64,
                        w2: rng.gen_range(1..=max_weight) as f64,
                    });
                }
            }
        }
        MaxcutInstance::new(vertices, edges)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hn, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let head: Vec<usize> = parse_fields(hn, header)?;
        if head.len() != 2 {
            return Err(Error::Parse {
                line: hn,
                message: "header must be `l edge_count`".into(),
            });
        }
        let mut edges = Vec::with_capacity(head[1]);
        for (n, line) in lines {
            let f: Vec<f64> = parse_fields(n, line)?;
            if f.len() != 4 || f[0] < 0.0 || f[1] < 0.0 || f[0].fract() != 0.0 || f[1].fract() != 0.0 {
                return Err(Error::Parse {
                    line: n,
                    message: "edge line must be `i j w1 w2`".into(),
                });
            }
            edges.push(Edge {
                i: f[0] as usize,
                j: f[1] as usize,
                w1: f[2],
                w2: f[3],
            });
        }
        if edges.len() != head[1] {
            return Err(Error::InvalidInstance(format!(
                "header announces {} edges, found {}",
                head[1],
                edges.len()
            )));
        }
        MaxcutInstance::new(head[0], edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertices, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {} {}", e.i, e.j, e.w1, e.w2);
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

pub(crate) fn parse_fields<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split_whitespace()
        .map(|t| {
            t.parse::<T>().map_err(|e| Error::Parse {
                line,
                message: format!("`{t}`: {e}"),
            })
        })
        .collect()
}

impl Problem for MaxcutInstance {
    fn name(&self) -> String {
        "maxcut".into()
    }

    fn genotype_len(&self) -> usize {
        self.vertices
    }

    fn evaluate(&self, g: &Genotype) -> ObjectiveVector {
        let bits = g.bits();
        let (mut c1, mut c2) = (0.0, 0.0);
        for e in &self.edges {
            if bits[e.i] != bits[e.j] {
                c1 += e.w1;
                c2 += e.w2;
            }
        }
        ObjectiveVector::pair(-c1, -c2)
    }
}
