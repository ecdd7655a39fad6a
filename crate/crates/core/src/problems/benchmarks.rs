//! Analytic benchmarks: Zeromax-Onemax, Trap5-InvTrap5 and LOTZ.
//! All three are maximization problems, negated at the boundary.

use crate::error::{Error, Result};
use crate::gateway::Problem;
use crate::metrics::Front;
use crate::solution::{Genotype, ObjectiveVector};

/// Block size of the deceptive trap functions.
pub const TRAP_K: usize = 5;

/// Deceptive trap of order `k`: `k - 1 - u` below the optimum, `k` at `u = k`.
pub fn trap(u: usize, k: usize) -> usize {
    if u == k {
        k
    } else {
        k - 1 - u
    }
}

/// Inverse deceptive trap: `u - 1` for `u > 0`, `k` at `u = 0`.
pub fn inverse_trap(u: usize, k: usize) -> usize {
    if u == 0 {
        k
    } else {
        u - 1
    }
}

fn front_from(points: impl Iterator<Item = (f64, f64)>) -> Front {
    Front::new(points.map(|(a, b)| ObjectiveVector::pair(-a, -b)).collect())
        .expect("two-objective points")
}

/// Objectives (ones, zeros), i.e. Onemax and Zeromax.
#[derive(Clone, Debug)]
pub struct ZeromaxOnemax {
    len: usize,
}

impl ZeromaxOnemax {
    pub fn new(len: usize) -> Self {
        ZeromaxOnemax { len }
    }
}

impl Problem for ZeromaxOnemax {
    fn name(&self) -> String {
        "zeromax-onemax".into()
    }

    fn genotype_len(&self) -> usize {
        self.len
    }

    fn evaluate(&self, g: &Genotype) -> ObjectiveVector {
        let u = g.count_ones();
        ObjectiveVector::pair(-(u as f64), -((self.len - u) as f64))
    }

    fn optimal_front(&self) -> Option<Front> {
        let l = self.len as f64;
        Some(front_from((0..=self.len).map(|u| (u as f64, l - u as f64))))
    }
}

/// Concatenated order-5 traps: objective 1 sums `trap`, objective 2 sums
/// `inverse_trap` over the same blocks.
#[derive(Clone, Debug)]
pub struct Trap5Pair {
    len: usize,
}

impl Trap5Pair {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 || !len.is_multiple_of(TRAP_K) {
            return Err(Error::InvalidConfig(format!(
                "trap length must be a positive multiple of {TRAP_K}, got {len}"
            )));
        }
        Ok(Trap5Pair { len })
    }
}

impl Problem for Trap5Pair {
    fn name(&self) -> String {
        "trap5".into()
    }

    fn genotype_len(&self) -> usize {
        self.len
    }

    fn evaluate(&self, g: &Genotype) -> ObjectiveVector {
        let (mut f1, mut f2) = (0, 0);
        for block in g.bits().chunks(TRAP_K) {
            let u = block.iter().filter(|&&b| b == 1).count();
            f1 += trap(u, TRAP_K);
            f2 += inverse_trap(u, TRAP_K);
        }
        ObjectiveVector::pair(-(f1 as f64), -(f2 as f64))
    }

    fn optimal_front(&self) -> Option<Front> {
        let blocks = self.len / TRAP_K;
        Some(front_from((0..=blocks).map(|b| {
            let rest = blocks - b;
            ((5 * b + 4 * rest) as f64, (4 * b + 5 * rest) as f64)
        })))
    }
}

/// Leading ones and trailing zeros, each counted up to the full length.
#[derive(Clone, Debug)]
pub struct Lotz {
    len: usize,
}

impl Lotz {
    pub fn new(len: usize) -> Result<Self> {
        if len < 2 {
            return Err(Error::InvalidConfig(format!("LOTZ needs length >= 2, got {len}")));
        }
        Ok(Lotz { len })
    }
}

impl Problem for Lotz {
    fn name(&self) -> String {
        "lotz".into()
    }

    fn genotype_len(&self) -> usize {
        self.len
    }

    fn evaluate(&self, g: &Genotype) -> ObjectiveVector {
        let bits = g.bits();
        let lead = bits.iter().take_while(|&&b| b == 1).count();
        let trail = bits.iter().rev().take_while(|&&b| b == 0).count();
        ObjectiveVector::pair(-(lead as f64), -(trail as f64))
    }

    fn optimal_front(&self) -> Option<Front> {
        let l = self.len as f64;
        Some(front_from((0..=self.len).map(|a| (a as f64, l - a as f64))))
    }
}
