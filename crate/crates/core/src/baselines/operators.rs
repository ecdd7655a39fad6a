//! Variation operators shared by the baselines.

use rand::Rng;

use crate::solution::Genotype;

/// Swaps each position between the two parents with probability 1/2.
pub fn uniform_crossover<R: Rng + ?Sized>(a: &Genotype, b: &Genotype, rng: &mut R) -> (Genotype, Genotype) {
    let (mut x, mut y) = (a.clone(), b.clone());
    for i in 0..a.len() {
        if rng.gen_bool(0.5) {
            x.set(i, b.get(i));
            y.set(i, a.get(i));
        }
    }
    (x, y)
}

/// Prefix of `a` up to a cut point drawn from 1..len, suffix of `b`.
pub fn one_point_crossover<R: Rng + ?Sized>(a: &Genotype, b: &Genotype, rng: &mut R) -> Genotype {
    let mut child = a.clone();
    if a.len() < 2 {
        return child;
    }
    let cut = rng.gen_range(1..a.len());
    for i in cut..a.len() {
        child.set(i, b.get(i));
    }
    child
}

/// Flips every position independently with probability `rate`.
pub fn bit_flip_mutation<R: Rng + ?Sized>(g: &mut Genotype, rate: f64, rng: &mut R) {
    for i in 0..g.len() {
        if rng.gen::<f64>() < rate {
            g.flip(i);
        }
    }
}
