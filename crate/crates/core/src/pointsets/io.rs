//! Point-list files and generator specifications.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::set::{column_tiling_spectrum, construct_example1, ColumnOffsets, Lattice, PointSet, PointSetKind, Points};
use crate::error::{Error, Result};

/// Parses one point per line, coordinates separated by spaces, `#` starting a comment.
///
/// `dim` fixes the dimension; otherwise it is taken from the first point (an empty list then
/// needs `dim`).
pub fn parse_point_list(text: &str, dim: Option<usize>) -> Result<Points> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let row = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: cannot parse {tok:?} as a number", lineno + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        let want = dim.or(rows.first().map(Vec::len)).unwrap_or(row.len());
        if row.len() != want {
            return Err(Error::Parse(format!("line {}: expected {want} coordinates, found {}", lineno + 1, row.len())));
        }
        rows.push(row);
    }
    let d = dim
        .or(rows.first().map(Vec::len))
        .ok_or_else(|| Error::Parse("empty point list; dimension unknown".into()))?;
    Points::from_rows(d, &rows)
}

/// Writes one point per line using shortest round-trip decimal formatting.
pub fn format_point_list(points: &Points) -> String {
    let mut out = String::new();
    for p in points.iter() {
        for (j, c) in p.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            // normalise -0 so files do not depend on how a zero was produced
            let c = if *c == 0.0 { 0.0 } else { *c };
            write!(out, "{c}").expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    out
}

/// JSON description of a point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub kind: PointSetKind,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    /// Rows `[v_1, …, v_{d-1}, t]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<f64>>>,
    /// Lattice only: uniform scale applied to the basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    /// Lattice only: generator rows (identity when omitted).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<f64>>>,
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<PointSet> {
        let d = self.dimension;
        if d == 0 {
            return Err(Error::InvalidPointSet("dimension must be positive".into()));
        }
        match self.kind {
            PointSetKind::Explicit => {
                let rows = self.points.clone().unwrap_or_default();
                Points::from_rows(d, &rows).map(PointSet::Explicit)
            }
            PointSetKind::Lattice => {
                let scale = self.scale.unwrap_or(1.0);
                if !(scale.is_finite() && scale > 0.0) {
                    return Err(Error::InvalidPointSet(format!("lattice scale must be positive, got {scale}")));
                }
                let basis = match &self.basis {
                    Some(b) => b.clone(),
                    None => (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect(),
                };
                if basis.len() != d {
                    return Err(Error::InvalidPointSet("basis row count differs from dimension".into()));
                }
                let scaled = basis.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
                Lattice::new(scaled).map(PointSet::Lattice)
            }
            PointSetKind::ColumnTiling => {
                let mut table = BTreeMap::new();
                for row in self.offsets.iter().flatten() {
                    if row.len() != d {
                        return Err(Error::InvalidOffsets(format!("offset row {row:?} should have {d} entries")));
                    }
                    let v = row[..d - 1]
                        .iter()
                        .map(|&x| {
                            (x.fract() == 0.0 && x.abs() < 9.0e15)
                                .then_some(x as i64)
                                .ok_or_else(|| Error::InvalidOffsets(format!("column index {x} is not an integer")))
                        })
                        .collect::<Result<Vec<i64>>>()?;
                    if table.insert(v.clone(), row[d - 1]).is_some() {
                        return Err(Error::InvalidOffsets(format!("column {v:?} listed twice")));
                    }
                }
                column_tiling_spectrum(d, ColumnOffsets::new(table)?)
            }
            PointSetKind::Example1 => construct_example1(d, self.radii.clone().unwrap_or_default()),
        }
    }

    pub fn from_point_set(ps: &PointSet) -> Self {
        let mut spec = GeneratorSpec {
            kind: ps.kind(),
            dimension: ps.dimension(),
            radii: None,
            offsets: None,
            points: None,
            scale: None,
            basis: None,
        };
        match ps {
            PointSet::Explicit(p) => spec.points = Some(p.to_rows()),
            PointSet::Lattice(l) => spec.basis = Some(l.basis().to_vec()),
            PointSet::ColumnTiling { offsets, .. } => {
                spec.offsets = Some(
                    offsets
                        .entries()
                        .map(|(v, &t)| v.iter().map(|&k| k as f64).chain(std::iter::once(t)).collect())
                        .collect(),
                )
            }
            PointSet::Example1 { radii, .. } => spec.radii = Some(radii.clone()),
        }
        spec
    }
}

pub fn parse_generator(json: &str) -> Result<PointSet> {
    serde_json::from_str::<GeneratorSpec>(json)?.build()
}
