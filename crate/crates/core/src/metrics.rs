//! Front quality: IGD, GD and pseudo-optimal reference fronts, plus the
//! plain-text front file format (one objective vector per line).

use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::solution::ObjectiveVector;

/// A set of mutually non-dominated objective vectors (minimization),
/// deduplicated and sorted lexicographically.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Front {
    points: Vec<ObjectiveVector>,
}

impl Front {
    /// Builds a front from arbitrary points, dropping dominated and duplicate ones.
    pub fn new(points: Vec<ObjectiveVector>) -> Result<Self> {
        if let Some(first) = points.first() {
            if let Some(bad) = points.iter().find(|p| p.len() != first.len()) {
                return Err(Error::DimensionMismatch(first.len(), bad.len()));
            }
        }
        Ok(Front {
            points: non_dominated(points),
        })
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, o: &ObjectiveVector) -> bool {
        self.points.binary_search_by(|p| p.lex_cmp(o)).is_ok()
    }

    /// True iff every point of `other` is also in `self`.
    pub fn covers(&self, other: &Front) -> bool {
        other.points.iter().all(|p| self.contains(p))
    }

    pub fn iter(&self) -> impl Iterator<Item = &ObjectiveVector> {
        self.points.iter()
    }

    /// Per-objective (min, max) over the front.
    pub fn bounds(&self) -> Vec<(f64, f64)> {
        let m = self.points.first().map_or(0, |p| p.len());
        (0..m)
            .map(|k| {
                self.points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                    (lo.min(p[k]), hi.max(p[k]))
                })
            })
            .collect()
    }
}

/// Non-dominated, deduplicated subset of `points`, sorted lexicographically.
pub fn non_dominated(mut points: Vec<ObjectiveVector>) -> Vec<ObjectiveVector> {
    points.sort_by(|a, b| a.lex_cmp(b));
    points.dedup_by(|a, b| a.lex_cmp(b) == Ordering::Equal);
    if points.first().is_some_and(|p| p.len() == 2) {
        // after the lexicographic sort a point survives iff its second
        // objective beats every earlier one
        let mut best = f64::INFINITY;
        points.retain(|p| {
            let keep = p[1] < best;
            if keep {
                best = p[1];
            }
            keep
        });
        return points;
    }
    let keep: Vec<bool> = points
        .iter()
        .map(|p| !points.iter().any(|q| q.dominates(p)))
        .collect();
    points
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

fn mean_min_distance(from: &Front, to: &Front, scale: Option<&[f64]>) -> Result<f64> {
    if from.is_empty() || to.is_empty() {
        return Err(Error::EmptyFront);
    }
    let m = from.points[0].len();
    if to.points[0].len() != m {
        return Err(Error::DimensionMismatch(m, to.points[0].len()));
    }
    let total: f64 = from
        .iter()
        .map(|r| {
            to.iter()
                .map(|x| match scale {
                    None => r.distance(x),
                    Some(s) => (0..m)
                        .map(|k| ((r[k] - x[k]) / s[k]).powi(2))
                        .sum::<f64>()
                        .sqrt(),
                })
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / from.len() as f64)
}

/// Mean distance from each reference point to its nearest point of `s`.
pub fn igd(s: &Front, reference: &Front) -> Result<f64> {
    mean_min_distance(reference, s, None)
}

/// Mean distance from each point of `s` to its nearest reference point.
pub fn gd(s: &Front, reference: &Front) -> Result<f64> {
    mean_min_distance(s, reference, None)
}

/// IGD with each objective divided by the reference front's range
/// (objectives with zero range are left unscaled).
pub fn igd_normalized(s: &Front, reference: &Front) -> Result<f64> {
    let scale: Vec<f64> = reference
        .bounds()
        .into_iter()
        .map(|(lo, hi)| if hi > lo { hi - lo } else { 1.0 })
        .collect();
    mean_min_distance(reference, s, Some(&scale))
}

/// Non-dominated union of several fronts.
pub fn merge_pseudo_optimal(fronts: &[Front]) -> Result<Front> {
    Front::new(fronts.iter().flat_map(|f| f.points.iter().cloned()).collect())
}

pub fn format_front(front: &Front) -> String {
    let mut out = String::new();
    for p in front.iter() {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

/// Parses a front file. Blank lines and `#` comments are skipped. Unless
/// `raw` is set, a line dominated by (or duplicating) another line is an error.
pub fn parse_front(text: &str, raw: bool) -> Result<Front> {
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let values = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|e| Error::Parse {
                line: n + 1,
                message: e.to_string(),
            })?;
        let o = ObjectiveVector::new(values).map_err(|e| Error::Parse {
            line: n + 1,
            message: e.to_string(),
        })?;
        points.push(o);
        lines.push(n + 1);
    }
    let front = Front::new(points.clone())?;
    if !raw && front.len() != points.len() {
        let line = points
            .iter()
            .zip(&lines)
            .enumerate()
            .find(|(i, (p, _))| {
                points
                    .iter()
                    .enumerate()
                    .any(|(j, q)| j != *i && (q.dominates(p) || (j < *i && q == *p)))
            })
            .map_or(0, |(_, (_, &l))| l);
        return Err(Error::Parse {
            line,
            message: "point is dominated by another point of the file".into(),
        });
    }
    Ok(front)
}

pub fn write_front(path: &Path, front: &Front) -> Result<()> {
    fs::write(path, format_front(front))?;
    Ok(())
}

pub fn read_front(path: &Path, raw: bool) -> Result<Front> {
    parse_front(&fs::read_to_string(path)?, raw)
}
