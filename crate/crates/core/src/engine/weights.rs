//! Weight vector strategies for the two-objective case.

use rand::Rng;

use super::archive::ElitistArchive;
use crate::solution::WeightVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightStrategy {
    /// First weight uniform on [0, 1).
    Random,
    /// Favors weights between archive members that are far apart.
    Smart,
}

pub fn random_weight_vector<R: Rng + ?Sized>(rng: &mut R) -> WeightVector {
    WeightVector::from_first(rng.gen::<f64>())
}

/// Maps each archive member to a weight point: objectives normalized by the
/// archive's own per-objective range, then scaled to sum 1 (a zero sum maps
/// to (0.5, 0.5)). Sorted by first weight.
pub fn weight_points(archive: &ElitistArchive) -> Vec<(f64, f64)> {
    let entries = archive.entries();
    let bounds = |k: usize| {
        entries.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s.objectives[k]), hi.max(s.objectives[k]))
        })
    };
    let (b0, b1) = (bounds(0), bounds(1));
    let norm = |v: f64, (lo, hi): (f64, f64)| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
    let mut points: Vec<(f64, f64)> = entries
        .iter()
        .map(|s| {
            let a = norm(s.objectives[0], b0);
            let b = norm(s.objectives[1], b1);
            let sum = a + b;
            if sum > 0.0 {
                (a / sum, b / sum)
            } else {
                (0.5, 0.5)
            }
        })
        .collect();
    points.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    points
}

fn interval_length(points: &[(f64, f64)], i: usize) -> f64 {
    let (a, b) = (points[i], points[i + 1]);
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Size-two tournament between intervals `first` and `second` (interval i
/// joins points i and i+1); the longer wins, ties go to `first`.
pub fn tournament_interval(points: &[(f64, f64)], first: usize, second: usize) -> usize {
    if interval_length(points, first) >= interval_length(points, second) {
        first
    } else {
        second
    }
}

/// Draws two intervals uniformly and returns the tournament winner.
/// Requires at least two points.
pub fn choose_interval<R: Rng + ?Sized>(points: &[(f64, f64)], rng: &mut R) -> usize {
    let intervals = points.len() - 1;
    let first = rng.gen_range(0..intervals);
    let second = rng.gen_range(0..intervals);
    tournament_interval(points, first, second)
}

/// Weight drawn uniformly between the first-weight coordinates of the chosen
/// interval's endpoints. Falls back to [`random_weight_vector`] when the
/// archive has fewer than two members.
pub fn smart_weight_vector<R: Rng + ?Sized>(archive: &ElitistArchive, rng: &mut R) -> WeightVector {
    if archive.len() < 2 {
        return random_weight_vector(rng);
    }
    let points = weight_points(archive);
    let i = choose_interval(&points, rng);
    let (start, end) = (points[i].0, points[i + 1].0);
    WeightVector::from_first(start + (end - start) * rng.gen::<f64>())
}
