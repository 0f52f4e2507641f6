//! Largest inscribed axis-aligned cube and the polygon isoperimetric ratio.

use serde::{Deserialize, Serialize};

use super::domain::{Domain, Polygon};
use crate::error::{Error, Result};

/// Relative tolerance of the binary search on the square side.
pub const INSCRIBED_REL_TOL: f64 = 1e-4;

/// Side length `ε` of a large axis-aligned cube contained in `Ω`.
///
/// Boxes and box unions return the best member box's shortest side. Polygons use a binary
/// search on the side `s` with an exact containment test over candidate placements; the
/// returned value is always certified feasible.
pub fn inscribed_cube_side(domain: &Domain) -> f64 {
    match domain {
        Domain::Box(_) | Domain::BoxUnion(_) => {
            domain.boxes().iter().map(|b| b.min_side()).fold(0.0, f64::max)
        }
        Domain::Polygon(p) => largest_inscribed_square(p).0,
    }
}

/// Largest axis-aligned square in a simple polygon: `(side, lower-left corner)`.
pub fn largest_inscribed_square(poly: &Polygon) -> (f64, [f64; 2]) {
    let bb = poly.bounding_box();
    let mut hi = bb.side(0).min(bb.side(1)).min(poly.area().sqrt());
    let mut lo = 0.0;
    let mut best = [bb.lo(0), bb.lo(1)];
    if let Some(c) = feasible_corner(poly, hi) {
        return (hi, c);
    }
    for _ in 0..200 {
        if hi - lo <= INSCRIBED_REL_TOL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match feasible_corner(poly, mid) {
            Some(c) => {
                lo = mid;
                best = c;
            }
            None => hi = mid,
        }
    }
    (lo, best)
}

/// Whether the closed square `[c, c + s]^2` lies in the closed polygon.
pub fn square_fits(poly: &Polygon, corner: [f64; 2], s: f64) -> bool {
    let bb = poly.bounding_box();
    let scale = bb.side(0).max(bb.side(1));
    let eps = 1e-10 * scale;
    let (x0, y0, x1, y1) = (corner[0] + eps, corner[1] + eps, corner[0] + s - eps, corner[1] + s - eps);
    if x0 >= x1 || y0 >= y1 {
        return false;
    }
    if !poly.contains(&[corner[0] + 0.5 * s, corner[1] + 0.5 * s]) {
        return false;
    }
    !poly.edges().any(|(p, q)| segment_hits_rect(p, q, x0, y0, x1, y1))
}

/// Liang-Barsky clip of segment `pq` against the closed rectangle.
fn segment_hits_rect(p: [f64; 2], q: [f64; 2], x0: f64, y0: f64, x1: f64, y1: f64) -> bool {
    let dx = q[0] - p[0];
    let dy = q[1] - p[1];
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    for (num_lo, num_hi, den) in [(x0 - p[0], x1 - p[0], dx), (y0 - p[1], y1 - p[1], dy)] {
        if den == 0.0 {
            if num_lo > 0.0 || num_hi < 0.0 {
                return false;
            }
        } else {
            let (a, b) = if den > 0.0 { (num_lo / den, num_hi / den) } else { (num_hi / den, num_lo / den) };
            t0 = t0.max(a);
            t1 = t1.min(b);
            if t0 > t1 {
                return false;
            }
        }
    }
    true
}

/// A line `{c : <n, c> = k}` bounding the feasible set of lower-left corners.
#[derive(Clone, Copy)]
struct Line {
    n: [f64; 2],
    k: f64,
}

/// Searches the vertices of the feasible-corner arrangement for a square of side `s`.
///
/// Sliding a feasible square keeps it feasible until it is pinned by two contacts, each
/// either a polygon vertex on a square side (an axis-parallel line) or a square corner on a
/// slanted edge. Corners on those pinned configurations are the candidates.
fn feasible_corner(poly: &Polygon, s: f64) -> Option<[f64; 2]> {
    let bb = poly.bounding_box();
    let (xmin, xmax) = (bb.lo(0), bb.hi(0) - s);
    let (ymin, ymax) = (bb.lo(1), bb.hi(1) - s);
    if xmin > xmax || ymin > ymax {
        return None;
    }
    let mut xs: Vec<f64> = poly.vertices().iter().flat_map(|v| [v[0], v[0] - s]).collect();
    let mut ys: Vec<f64> = poly.vertices().iter().flat_map(|v| [v[1], v[1] - s]).collect();
    for v in [&mut xs, &mut ys] {
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    xs.retain(|&x| x >= xmin - 1e-12 && x <= xmax + 1e-12);
    ys.retain(|&y| y >= ymin - 1e-12 && y <= ymax + 1e-12);
    let try_corner = |c: [f64; 2]| square_fits(poly, c, s).then_some(c);

    for &x in &xs {
        for &y in &ys {
            if let Some(c) = try_corner([x, y]) {
                return Some(c);
            }
        }
    }
    if poly.is_rectilinear() {
        return None;
    }

    let mut slanted: Vec<Line> = Vec::new();
    for (p, q) in poly.edges() {
        if p[0] == q[0] || p[1] == q[1] {
            continue;
        }
        let n = [q[1] - p[1], p[0] - q[0]];
        let k0 = n[0] * p[0] + n[1] * p[1];
        for off in [[0.0, 0.0], [s, 0.0], [0.0, s], [s, s]] {
            slanted.push(Line { n, k: k0 - n[0] * off[0] - n[1] * off[1] });
        }
    }
    let axis_lines = xs
        .iter()
        .map(|&x| Line { n: [1.0, 0.0], k: x })
        .chain(ys.iter().map(|&y| Line { n: [0.0, 1.0], k: y }));
    let all: Vec<Line> = axis_lines.chain(slanted.iter().copied()).collect();
    let first_slanted = all.len() - slanted.len();
    for i in 0..all.len() {
        for j in first_slanted.max(i + 1)..all.len() {
            let (a, b) = (all[i], all[j]);
            let det = a.n[0] * b.n[1] - a.n[1] * b.n[0];
            if det.abs() < 1e-14 {
                continue;
            }
            let c = [(a.k * b.n[1] - b.k * a.n[1]) / det, (a.n[0] * b.k - b.n[0] * a.k) / det];
            if c[0] < xmin - 1e-12 || c[0] > xmax + 1e-12 || c[1] < ymin - 1e-12 || c[1] > ymax + 1e-12 {
                continue;
            }
            if let Some(c) = try_corner(c) {
                return Some(c);
            }
        }
    }
    None
}

/// Perimeter, area, inscribed square side and the ratio `c = (|∂Ω| / |Ω|) · ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoperimetricRecord {
    pub perimeter: f64,
    pub volume: f64,
    pub epsilon: f64,
    pub constant_c: f64,
}

pub fn polygon_isoperimetric_check(domain: &Domain) -> Result<IsoperimetricRecord> {
    let poly = domain
        .as_polygon()
        .ok_or_else(|| Error::UnsupportedDomain(format!("{:?} is not a polygon", domain.kind())))?;
    let perimeter = poly.perimeter();
    let volume = poly.area();
    let epsilon = largest_inscribed_square(poly).0;
    Ok(IsoperimetricRecord { perimeter, volume, epsilon, constant_c: perimeter * epsilon / volume })
}
