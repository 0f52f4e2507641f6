//! Sampled Landau densities `D_R^± = max / min_x #(Λ ∩ Q_R(x))`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::set::{PointSet, Window};
use crate::error::{Error, Result};
use crate::geometry::AxisBox;

/// Coarsest admissible grid spacing for center sampling.
pub const MAX_GRID_SPACING: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CenterSpec {
    Explicit { centers: Vec<Vec<f64>> },
    /// Grid `lo + i · (hi − lo) / n` per axis with `n = ⌈(hi − lo) / spacing⌉`.
    Grid { spacing: f64 },
}

impl CenterSpec {
    pub fn centers(&self, search_box: &AxisBox) -> Result<Vec<Vec<f64>>> {
        match self {
            CenterSpec::Explicit { centers } => {
                if centers.iter().any(|c| c.len() != search_box.dimension()) {
                    return Err(Error::InvalidArgument("center dimension mismatch".into()));
                }
                Ok(centers.clone())
            }
            CenterSpec::Grid { spacing } => {
                if !(*spacing > 0.0 && *spacing <= MAX_GRID_SPACING) {
                    return Err(Error::InvalidArgument(format!(
                        "grid spacing must lie in (0, {MAX_GRID_SPACING}], got {spacing}"
                    )));
                }
                let axes: Vec<Vec<f64>> = search_box
                    .intervals()
                    .iter()
                    .map(|&[lo, hi]| {
                        let n = ((hi - lo) / spacing - 1e-9).ceil().max(1.0) as usize;
                        (0..=n).map(|i| lo + i as f64 * (hi - lo) / n as f64).collect()
                    })
                    .collect();
                let ranges: Vec<(i64, i64)> = axes.iter().map(|a| (0, a.len() as i64 - 1)).collect();
                let mut out = Vec::new();
                super::set::for_each_index(&ranges, |idx| {
                    out.push(idx.iter().zip(&axes).map(|(&i, a)| a[i as usize]).collect());
                });
                Ok(out)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandauDensity {
    pub radius: f64,
    pub d_plus: usize,
    pub d_minus: usize,
    /// `D^± / (2R)^d`.
    pub normalized_plus: f64,
    pub normalized_minus: f64,
    pub argmax: Vec<f64>,
    pub argmin: Vec<f64>,
    pub search_box: Vec<[f64; 2]>,
    pub centers: CenterSpec,
    pub center_count: usize,
}

/// Max and min point counts in closed cubes of side `2R` over the sampled centers.
pub fn landau_density(ps: &PointSet, r: f64, search_box: &AxisBox, centers: &CenterSpec) -> Result<LandauDensity> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("cube radius must be positive, got {r}")));
    }
    if search_box.dimension() != ps.dimension() {
        return Err(Error::InvalidArgument("search box and point set dimensions differ".into()));
    }
    let cs = centers.centers(search_box)?;
    if cs.is_empty() {
        return Err(Error::InvalidArgument("no sample centers".into()));
    }
    let counts: Vec<usize> = cs
        .par_iter()
        .map(|c| ps.count(&Window::cube(r, c.clone())?))
        .collect::<Result<_>>()?;
    let (mut imax, mut imin) = (0, 0);
    for (i, &n) in counts.iter().enumerate() {
        if n > counts[imax] {
            imax = i;
        }
        if n < counts[imin] {
            imin = i;
        }
    }
    let vol = (2.0 * r).powi(ps.dimension() as i32);
    Ok(LandauDensity {
        radius: r,
        d_plus: counts[imax],
        d_minus: counts[imin],
        normalized_plus: counts[imax] as f64 / vol,
        normalized_minus: counts[imin] as f64 / vol,
        argmax: cs[imax].clone(),
        argmin: cs[imin].clone(),
        search_box: search_box.intervals().to_vec(),
        centers: centers.clone(),
        center_count: cs.len(),
    })
}
