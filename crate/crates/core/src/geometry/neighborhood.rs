//! Boundary neighborhoods and Minkowski content.
//!
//! Distances to `∂Ω` are measured in the sup norm, so the open `h`-neighborhood of a box
//! boundary is exactly the inflated box minus the deflated box. The Euclidean neighborhood is
//! contained in it, so every upper bound stated against this measure also holds Euclidean.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::domain::{AxisBox, Domain, Polygon};
use crate::error::{Error, Result};

/// Grid cells per `h` used by the counting path.
pub const GRID_REFINEMENT: f64 = 16.0;

/// Relative ratio spread across scales above which the chosen `alpha` is flagged.
pub const SCALE_STABILITY_TOL: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum NeighborhoodMethod {
    Exact,
    Grid { resolution: f64 },
}

/// `M(h) = |{x : dist(x, ∂Ω) < h}|` together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodMeasure {
    pub h: f64,
    pub value: f64,
    #[serde(flatten)]
    pub method: NeighborhoodMethod,
}

/// Measure of the two-sided open `h`-neighborhood of `∂Ω`.
///
/// Single boxes use the inflate/deflate identity; every other domain is grid counted at
/// resolution `h / 16`.
pub fn boundary_neighborhood_measure(domain: &Domain, h: f64) -> Result<NeighborhoodMeasure> {
    check_h(h)?;
    match domain {
        Domain::Box(b) => Ok(NeighborhoodMeasure { h, value: box_neighborhood_exact(b, h), method: NeighborhoodMethod::Exact }),
        _ => boundary_neighborhood_measure_grid(domain, h, h / GRID_REFINEMENT),
    }
}

/// Grid-counting path, available for every domain kind.
pub fn boundary_neighborhood_measure_grid(domain: &Domain, h: f64, resolution: f64) -> Result<NeighborhoodMeasure> {
    check_h(h)?;
    if !(resolution > 0.0 && resolution <= h) {
        return Err(Error::InvalidArgument(format!("grid resolution must lie in (0, h], got {resolution}")));
    }
    let grid = Grid::covering(domain, h, resolution);
    let rows = match domain {
        Domain::Polygon(p) => polygon_rows(&grid, p, h),
        _ => box_rows(&grid, domain.boxes(), h),
    };
    let filter = matches!(domain, Domain::BoxUnion(_));
    let cube_volume = (2.0 * h).powi(grid.dim() as i32);
    let count: u64 = rows
        .into_par_iter()
        .map(|(key, mut intervals)| {
            let merged = merge_intervals(&mut intervals);
            if !filter {
                return merged.iter().map(|&(a, b)| (b - a + 1) as u64).sum::<u64>();
            }
            let mut center = grid.row_prefix(key);
            center.push(0.0);
            let last = grid.dim() - 1;
            let mut n = 0u64;
            for &(a, b) in &merged {
                for i in a..=b {
                    center[last] = grid.center(last, i);
                    let inside = domain.overlap_with_cube(&center, h).unwrap_or(0.0);
                    let tol = 1e-12 * cube_volume;
                    if inside > tol && inside < cube_volume - tol {
                        n += 1;
                    }
                }
            }
            n
        })
        .sum();
    Ok(NeighborhoodMeasure {
        h,
        value: count as f64 * resolution.powi(grid.dim() as i32),
        method: NeighborhoodMethod::Grid { resolution },
    })
}

fn check_h(h: f64) -> Result<()> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument(format!("neighborhood radius must be positive, got {h}")));
    }
    Ok(())
}

fn box_neighborhood_exact(b: &AxisBox, h: f64) -> f64 {
    let d = b.dimension();
    let outer: f64 = (0..d).map(|j| b.side(j) + 2.0 * h).product();
    let inner: f64 = (0..d).map(|j| (b.side(j) - 2.0 * h).max(0.0)).product();
    outer - inner
}

/// Regular grid of cell centers covering the bounding box inflated by `h`.
struct Grid {
    origin: Vec<f64>,
    counts: Vec<usize>,
    res: f64,
}

impl Grid {
    fn covering(domain: &Domain, h: f64, res: f64) -> Self {
        let bb = domain.bounding_box();
        let origin: Vec<f64> = (0..bb.dimension()).map(|j| bb.lo(j) - h).collect();
        let counts = (0..bb.dimension())
            .map(|j| ((bb.side(j) + 2.0 * h) / res).ceil() as usize)
            .collect();
        Self { origin, counts, res }
    }

    fn dim(&self) -> usize {
        self.origin.len()
    }

    fn center(&self, axis: usize, i: usize) -> f64 {
        self.origin[axis] + (i as f64 + 0.5) * self.res
    }

    /// Indices of cell centers strictly inside `(lo, hi)` along `axis`.
    fn centers_within(&self, axis: usize, lo: f64, hi: f64) -> Option<(usize, usize)> {
        let o = self.origin[axis];
        let first = ((lo - o) / self.res - 0.5).floor() + 1.0;
        let last = ((hi - o) / self.res - 0.5).ceil() - 1.0;
        let first = first.max(0.0);
        let last = last.min(self.counts[axis] as f64 - 1.0);
        (first <= last).then_some((first as usize, last as usize))
    }

    fn row_key(&self, prefix: &[usize]) -> u64 {
        prefix
            .iter()
            .enumerate()
            .fold(0u64, |key, (axis, &i)| key * self.counts[axis] as u64 + i as u64)
    }

    fn row_prefix(&self, mut key: u64) -> Vec<f64> {
        let d = self.dim();
        let mut idx = vec![0usize; d - 1];
        for axis in (0..d - 1).rev() {
            let n = self.counts[axis] as u64;
            idx[axis] = (key % n) as usize;
            key /= n;
        }
        idx.iter().enumerate().map(|(axis, &i)| self.center(axis, i)).collect()
    }
}

type Rows = HashMap<u64, Vec<(usize, usize)>>;

/// Candidate cells: the union over member-box facets of `facet ⊕ (-h, h)^d`.
fn box_rows(grid: &Grid, boxes: &[AxisBox], h: f64) -> Rows {
    let d = grid.dim();
    let last = d - 1;
    let mut rows: Rows = HashMap::new();
    for b in boxes {
        for axis in 0..d {
            for face in [b.lo(axis), b.hi(axis)] {
                let slab: Vec<(f64, f64)> = (0..d)
                    .map(|j| if j == axis { (face - h, face + h) } else { (b.lo(j) - h, b.hi(j) + h) })
                    .collect();
                let Some(tail) = grid.centers_within(last, slab[last].0, slab[last].1) else { continue };
                let ranges: Option<Vec<(usize, usize)>> =
                    (0..last).map(|j| grid.centers_within(j, slab[j].0, slab[j].1)).collect();
                let Some(ranges) = ranges else { continue };
                for_each_index(&ranges, |prefix| {
                    rows.entry(grid.row_key(prefix)).or_default().push(tail);
                });
            }
        }
    }
    rows
}

/// Rows over the x axis; each edge contributes the y-range of `edge ⊕ (-h, h)^2` on the row.
fn polygon_rows(grid: &Grid, poly: &Polygon, h: f64) -> Rows {
    let mut rows: Rows = HashMap::new();
    for (p, q) in poly.edges() {
        let ux = q[0] - p[0];
        let uy = q[1] - p[1];
        let Some((i0, i1)) = grid.centers_within(0, p[0].min(q[0]) - h, p[0].max(q[0]) + h) else { continue };
        for i in i0..=i1 {
            let xc = grid.center(0, i);
            // parameters t in [0, 1] with |xc - (p.x + t ux)| < h
            let (t0, t1) = if ux == 0.0 {
                if (xc - p[0]).abs() < h { (0.0, 1.0) } else { continue }
            } else {
                let a = (xc - p[0] - h) / ux;
                let b = (xc - p[0] + h) / ux;
                (a.min(b).max(0.0), a.max(b).min(1.0))
            };
            if t0 > t1 {
                continue;
            }
            let y_lo = p[1] + (t0 * uy).min(t1 * uy) - h;
            let y_hi = p[1] + (t0 * uy).max(t1 * uy) + h;
            if let Some(range) = grid.centers_within(1, y_lo, y_hi) {
                rows.entry(grid.row_key(&[i])).or_default().push(range);
            }
        }
    }
    rows
}

fn for_each_index(ranges: &[(usize, usize)], mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&idx);
        let mut axis = ranges.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            if idx[axis] < ranges[axis].1 {
                idx[axis] += 1;
                for k in (axis + 1)..ranges.len() {
                    idx[k] = ranges[k].0;
                }
                break;
            }
        }
    }
}

fn merge_intervals(intervals: &mut [(usize, usize)]) -> Vec<(usize, usize)> {
    intervals.sort_unstable();
    let mut merged: Vec<(usize, usize)> = Vec::with_capacity(intervals.len());
    for &(a, b) in intervals.iter() {
        match merged.last_mut() {
            Some(last) if a <= last.1 + 1 => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    merged
}

/// Direction in which the per-scale ratios move as `h` decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioTrend {
    Stable,
    /// Ratios grow as `h` shrinks: `alpha` is below the boundary dimension.
    Increasing,
    /// Ratios shrink toward zero: `alpha` is above the boundary dimension.
    Decreasing,
    Mixed,
}

/// Estimate of the `alpha`-dimensional upper Minkowski content of `∂Ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiEstimate {
    pub alpha: f64,
    pub scales: Vec<f64>,
    pub measures: Vec<f64>,
    /// `M(h) / (2 h^{d - alpha})` per scale.
    pub ratios: Vec<f64>,
    pub content: f64,
    /// `(max - min) / max` over the ratios.
    pub spread: f64,
    pub trend: RatioTrend,
    /// Raised when the spread exceeds [`SCALE_STABILITY_TOL`].
    pub wrong_alpha: bool,
    pub methods: Vec<NeighborhoodMethod>,
}

/// `|∂Ω|_α := max_h M(h) / (2 h^{d-α})` over the supplied scales.
///
/// The factor 2 normalizes the classical case: the unit square at `α = 1` gives its perimeter.
pub fn minkowski_content_estimate(domain: &Domain, alpha: f64, scales: &[f64]) -> Result<MinkowskiEstimate> {
    let d = domain.dimension() as f64;
    if !(alpha >= d - 1.0 && alpha < d) {
        return Err(Error::InvalidArgument(format!("alpha must lie in [{}, {}), got {alpha}", d - 1.0, d)));
    }
    if scales.is_empty() {
        return Err(Error::InvalidArgument("scale list is empty".into()));
    }
    if scales.iter().any(|&h| !(h > 0.0)) || scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("scales must be positive and strictly decreasing".into()));
    }
    let measured: Vec<NeighborhoodMeasure> = scales
        .iter()
        .map(|&h| boundary_neighborhood_measure(domain, h))
        .collect::<Result<_>>()?;
    let ratios: Vec<f64> = measured.iter().map(|m| m.value / (2.0 * m.h.powf(d - alpha))).collect();
    let content = ratios.iter().copied().fold(0.0, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = if content > 0.0 { (content - min) / content } else { 0.0 };
    let trend = if spread <= SCALE_STABILITY_TOL {
        RatioTrend::Stable
    } else if ratios.windows(2).all(|w| w[1] > w[0]) {
        RatioTrend::Increasing
    } else if ratios.windows(2).all(|w| w[1] < w[0]) {
        RatioTrend::Decreasing
    } else {
        RatioTrend::Mixed
    };
    Ok(MinkowskiEstimate {
        alpha,
        scales: scales.to_vec(),
        measures: measured.iter().map(|m| m.value).collect(),
        ratios,
        content,
        spread,
        trend,
        wrong_alpha: spread > SCALE_STABILITY_TOL,
        methods: measured.iter().map(|m| m.method).collect(),
    })
}

/// Geometric scales `diam/10, diam/20, ...` (`count` of them).
pub fn default_scales(domain: &Domain, count: usize) -> Vec<f64> {
    let top = domain.bounding_diameter() / 10.0;
    (0..count).map(|k| top / 2f64.powi(k as i32)).collect()
}
