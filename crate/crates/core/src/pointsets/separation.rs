//! Minimum pairwise distance.

use std::collections::HashMap;

use super::set::{PointSet, Points, Window};
use crate::error::{Error, Result};

/// Above this many points the bucket search replaces all-pairs.
pub const ALL_PAIRS_LIMIT: usize = 10_000;

/// Minimum Euclidean distance between points of `Λ` inside the window.
pub fn separation(ps: &PointSet, w: &Window) -> Result<f64> {
    min_distance(&ps.enumerate(w)?)
}

pub fn min_distance(points: &Points) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::UndefinedSeparation(points.len()));
    }
    Ok(if points.len() <= ALL_PAIRS_LIMIT { all_pairs(points) } else { bucketed(points) })
}

pub fn all_pairs(points: &Points) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        let p = points.get(i);
        for j in i + 1..points.len() {
            best = best.min(dist2(p, points.get(j)));
        }
    }
    best.sqrt()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Grid buckets of side `s`: any pair closer than `s` lies in neighbouring cells. The side
/// starts at the mean spacing and doubles until a pair within `s` is found.
fn bucketed(points: &Points) -> f64 {
    let d = points.dimension();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in points.iter() {
        for j in 0..d {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    let extent: f64 = lo.iter().zip(&hi).map(|(a, b)| (b - a).max(1e-300)).product();
    let mut side = (extent / points.len() as f64).powf(1.0 / d as f64);
    if !(side.is_finite() && side > 0.0) {
        side = 1.0;
    }
    loop {
        let best = bucket_pass(points, &lo, side);
        if best <= side * side {
            return best.sqrt();
        }
        side *= 2.0;
    }
}

fn bucket_pass(points: &Points, lo: &[f64], side: f64) -> f64 {
    let d = points.dimension();
    let cell = |p: &[f64]| -> Vec<i64> { p.iter().zip(lo).map(|(x, l)| ((x - l) / side).floor() as i64).collect() };
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        buckets.entry(cell(p)).or_default().push(i);
    }
    let offsets: Vec<Vec<i64>> = {
        let mut v = Vec::new();
        super::set::for_each_index(&vec![(-1, 1); d], |o| v.push(o.to_vec()));
        v
    };
    let mut best = f64::INFINITY;
    let mut key = vec![0i64; d];
    for (i, p) in points.iter().enumerate() {
        let c = cell(p);
        for o in &offsets {
            for j in 0..d {
                key[j] = c[j] + o[j];
            }
            if let Some(bucket) = buckets.get(&key) {
                for &k in bucket {
                    if k > i {
                        best = best.min(dist2(p, points.get(k)));
                    }
                }
            }
        }
    }
    best
}
