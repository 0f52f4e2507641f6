//! Largest empty axis-aligned cube and the two upper bounds on its size.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    default_scales, inscribed_cube_side, minkowski_content_estimate, polygon_isoperimetric_check, AxisBox, ConvexBody,
    Domain,
};
use crate::pointsets::{PointSet, Points, Window};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmptyCube {
    /// Side `s` of the largest cube inside the search box whose open interior misses `Λ`.
    pub side: f64,
    /// `s / 2`, the radius convention of `Q_R(x)`.
    pub r_star: f64,
    pub lower_corner: Vec<f64>,
    pub delta: f64,
    /// The search box held no points, so the whole box is empty.
    pub no_points: bool,
}

/// Largest cube `c + [0, s]^d ⊂ search_box` with no point of `Λ` in its open interior.
///
/// A maximal empty cube can be slid toward lower coordinates until each lower face meets the
/// box or a point coordinate, so lower corners range over `{lo_j} ∪ {p_j}` per axis. For a
/// fixed corner the largest side is the minimum over points strictly above the corner of
/// `max_j (p_j − c_j)`, capped by the box. The search is exact; `delta` is only recorded.
pub fn largest_empty_cube(ps: &PointSet, search_box: &AxisBox, delta: f64) -> Result<EmptyCube> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    let d = ps.dimension();
    if search_box.dimension() != d {
        return Err(Error::InvalidArgument("search box and point set dimensions differ".into()));
    }
    let half = (0..d).map(|j| 0.5 * search_box.side(j)).fold(0.0, f64::max);
    let window = Window::new(ConvexBody::unit_cube(d), half, search_box.center())?;
    let mut inside = Points::new(d);
    for p in ps.enumerate(&window)?.iter() {
        if (0..d).all(|j| p[j] > search_box.lo(j) && p[j] < search_box.hi(j)) {
            inside.push(p);
        }
    }
    if inside.is_empty() {
        return Ok(EmptyCube {
            side: search_box.min_side(),
            r_star: 0.5 * search_box.min_side(),
            lower_corner: (0..d).map(|j| search_box.lo(j)).collect(),
            delta,
            no_points: true,
        });
    }
    let axes: Vec<Vec<f64>> = (0..d)
        .map(|j| {
            let mut v: Vec<f64> = std::iter::once(search_box.lo(j)).chain(inside.iter().map(|p| p[j])).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        })
        .collect();
    let ranges: Vec<(i64, i64)> = axes.iter().map(|a| (0, a.len() as i64 - 1)).collect();
    let mut corners: Vec<Vec<f64>> = Vec::new();
    crate::pointsets::set::for_each_index(&ranges, |idx| {
        corners.push(idx.iter().zip(&axes).map(|(&i, a)| a[i as usize]).collect());
    });
    let best = corners
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let mut s = (0..d).map(|j| search_box.hi(j) - c[j]).fold(f64::INFINITY, f64::min);
            for p in inside.iter() {
                let mut reach = 0.0f64;
                let mut above = true;
                for j in 0..d {
                    let gap = p[j] - c[j];
                    if gap <= 0.0 {
                        above = false;
                        break;
                    }
                    reach = reach.max(gap);
                }
                if above && reach < s {
                    s = reach;
                }
            }
            (s, k)
        })
        .reduce(|| (f64::NEG_INFINITY, usize::MAX), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    Ok(EmptyCube { side: best.0, r_star: 0.5 * best.0, lower_corner: corners[best.1].clone(), delta, no_points: false })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmptyCubeReport {
    pub r_star: f64,
    pub side: f64,
    pub alpha: f64,
    /// `|∂Ω|_α` as estimated from boundary neighborhoods.
    pub content: f64,
    pub volume: f64,
    /// Side of the largest inscribed axis-aligned cube.
    pub epsilon: f64,
    pub a: f64,
    pub b: f64,
    /// `(B |∂Ω|_α / (A |Ω|))^{1/(d−α)}` without its universal constant.
    pub bound_minkowski: f64,
    /// The radicand `B |∂Ω|_α / (A |Ω|)`.
    pub minkowski_radicand: f64,
    /// `(B / A) ε^{-1}` without its universal constant.
    pub bound_inscribed: f64,
    pub c1: f64,
    pub c2: f64,
    /// `(|∂Ω| / |Ω|) ε` for polygons.
    pub comparison_ratio: Option<f64>,
    pub empty_cube: EmptyCube,
}

/// Measured empty-cube radius against both constant-free bounds.
///
/// `content` overrides the neighborhood estimate of `|∂Ω|_α`; without it the estimate uses
/// scales below a tenth of the smallest feature of `Ω`.
#[allow(clippy::too_many_arguments)]
pub fn check_empty_cube_bounds(
    dom: &Domain,
    ps: &PointSet,
    alpha: f64,
    a: f64,
    b: f64,
    search_box: &AxisBox,
    delta: f64,
    content: Option<f64>,
) -> Result<EmptyCubeReport> {
    let d = dom.dimension() as f64;
    if !(alpha >= d - 1.0 && alpha < d) {
        return Err(Error::InvalidArgument(format!("alpha must lie in [d-1, d), got {alpha}")));
    }
    if !(a > 0.0 && b >= a) {
        return Err(Error::InvalidArgument(format!("frame bounds need 0 < A <= B, got A={a}, B={b}")));
    }
    let content = match content {
        Some(c) if c > 0.0 => c,
        Some(c) => return Err(Error::InvalidArgument(format!("content must be positive, got {c}"))),
        None => minkowski_content_estimate(dom, alpha, &feature_scales(dom))?.content,
    };
    let volume = dom.volume();
    let epsilon = inscribed_cube_side(dom);
    let radicand = b * content / (a * volume);
    let bound_minkowski = radicand.powf(1.0 / (d - alpha));
    let bound_inscribed = b / a / epsilon;
    let empty_cube = largest_empty_cube(ps, search_box, delta)?;
    let comparison_ratio = polygon_isoperimetric_check(dom).ok().map(|r| r.constant_c);
    Ok(EmptyCubeReport {
        r_star: empty_cube.r_star,
        side: empty_cube.side,
        alpha,
        content,
        volume,
        epsilon,
        a,
        b,
        bound_minkowski,
        minkowski_radicand: radicand,
        bound_inscribed,
        c1: empty_cube.r_star / bound_minkowski,
        c2: empty_cube.r_star / bound_inscribed,
        comparison_ratio,
        empty_cube,
    })
}

/// Four dyadic scales starting at a tenth of the shortest edge or box side.
pub fn feature_scales(dom: &Domain) -> Vec<f64> {
    let feature = match dom {
        Domain::Polygon(p) => p.edges().map(|(u, v)| (v[0] - u[0]).hypot(v[1] - u[1])).fold(f64::INFINITY, f64::min),
        _ => dom.boxes().iter().map(AxisBox::min_side).fold(f64::INFINITY, f64::min),
    };
    let top = (feature / 10.0).min(default_scales(dom, 1)[0]);
    (0..4).map(|k| top * 0.5f64.powi(k)).collect()
}
