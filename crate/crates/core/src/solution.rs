//! Solution representation shared by every optimizer: binary genotypes,
//! objective vectors in minimization convention, Pareto dominance, and the
//! weighted-sum scalarization over running min/max normalized objectives.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use rand::Rng;

use crate::error::{Error, Result};

/// Fixed-length binary decision vector. Bits are stored as `0`/`1` bytes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genotype(Vec<u8>);

impl Genotype {
    pub fn zeros(len: usize) -> Self {
        Genotype(vec![0; len])
    }

    pub fn ones(len: usize) -> Self {
        Genotype(vec![1; len])
    }

    /// Builds a genotype from `0`/`1` values; anything else is rejected.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidGenotype(format!(
                "bit {pos} has value {}",
                bits[pos]
            )));
        }
        Ok(Genotype(bits.to_vec()))
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Genotype(bits.iter().map(|&b| b as u8).collect())
    }

    /// Parses a string such as `"0110"`. Whitespace and `_` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for c in text.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                c if c.is_whitespace() || c == '_' => {}
                c => return Err(Error::InvalidGenotype(format!("unexpected character {c:?}"))),
            }
        }
        Ok(Genotype(bits))
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Genotype((0..len).map(|_| rng.gen_range(0..=1u8)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        self.0[index] == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        self.0[index] = value as u8;
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        self.0[index] ^= 1;
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn complement(&self) -> Self {
        Genotype(self.0.iter().map(|&b| b ^ 1).collect())
    }

    /// Indexes of the set bits, ascending.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b == 1).then_some(i))
    }
}

impl fmt::Display for Genotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Objective values, all to be minimized. Maximization problems negate their
/// objectives before constructing one of these.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidObjectives(format!(
                "need at least two objectives, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidObjectives(format!("non-finite value {v}")));
        }
        Ok(ObjectiveVector(values))
    }

    pub fn pair(first: f64, second: f64) -> Self {
        Self::new(vec![first, second]).expect("finite objective pair")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Pareto dominance under minimization. Lengths must match.
    #[inline]
    pub fn dominates(&self, other: &ObjectiveVector) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut strictly_better = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a > b {
                return false;
            }
            if a < b {
                strictly_better = true;
            }
        }
        strictly_better
    }

    /// Lexicographic total order, used to make front output deterministic.
    pub fn lex_cmp(&self, other: &ObjectiveVector) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    pub fn distance(&self, other: &ObjectiveVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<usize> for ObjectiveVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checked dominance: `a` dominates `b` iff it is no worse everywhere and the
/// vectors differ.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    Ok(a.dominates(b))
}

/// Non-negative weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    const SUM_TOLERANCE: f64 = 1e-9;

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::InvalidWeights(format!("{weights:?} has a component outside [0, 1]")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::InvalidWeights(format!("{weights:?} sums to {sum}")));
        }
        Ok(WeightVector(weights))
    }

    /// Two-objective weight `(first, 1 - first)`; `first` is clamped to [0, 1].
    pub fn from_first(first: f64) -> Self {
        let first = first.clamp(0.0, 1.0);
        WeightVector(vec![first, 1.0 - first])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

/// Running per-objective minimum and maximum over every vector observed.
#[derive(Clone, Debug)]
pub struct ObjectiveNormalizer {
    min: Vec<f64>,
    max: Vec<f64>,
    observed: bool,
}

impl ObjectiveNormalizer {
    pub fn new(objectives: usize) -> Self {
        ObjectiveNormalizer {
            min: vec![f64::INFINITY; objectives],
            max: vec![f64::NEG_INFINITY; objectives],
            observed: false,
        }
    }

    pub fn observe(&mut self, o: &ObjectiveVector) {
        debug_assert_eq!(o.len(), self.min.len());
        for (i, &v) in o.values().iter().enumerate() {
            if v < self.min[i] {
                self.min[i] = v;
            }
            if v > self.max[i] {
                self.max[i] = v;
            }
        }
        self.observed = true;
    }

    pub fn has_observations(&self) -> bool {
        self.observed
    }

    pub fn bounds(&self, objective: usize) -> (f64, f64) {
        (self.min[objective], self.max[objective])
    }

    /// Maps `[min, max]` of objective `i` onto `[0, 1]`; a degenerate range maps to 0.
    #[inline]
    pub fn normalize(&self, objective: usize, value: f64) -> f64 {
        let (lo, hi) = (self.min[objective], self.max[objective]);
        if hi > lo {
            (value - lo) / (hi - lo)
        } else {
            0.0
        }
    }

    /// Weighted sum of normalized objectives, to be minimized.
    #[inline]
    pub fn scalarize(&self, o: &ObjectiveVector, w: &WeightVector) -> f64 {
        debug_assert_eq!(o.len(), w.len());
        o.values()
            .iter()
            .zip(w.as_slice())
            .enumerate()
            .map(|(i, (&v, &wi))| wi * self.normalize(i, v))
            .sum()
    }
}

/// Checked scalarization.
pub fn scalarize(o: &ObjectiveVector, w: &WeightVector, n: &ObjectiveNormalizer) -> Result<f64> {
    if !n.has_observations() {
        return Err(Error::InvalidConfig("normalizer has no observations".into()));
    }
    if o.len() != w.len() {
        return Err(Error::DimensionMismatch(o.len(), w.len()));
    }
    if o.len() != n.min.len() {
        return Err(Error::DimensionMismatch(o.len(), n.min.len()));
    }
    Ok(n.scalarize(o, w))
}

/// An evaluated genotype together with the evaluation count at which it was
/// first evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub genotype: Genotype,
    pub objectives: ObjectiveVector,
    pub found_at: u64,
}
