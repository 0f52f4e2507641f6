//! A small corpus of (domain, frame) pairs for tabulating the empty-cube constants.
//!
//! A polygon inside the box `[0,a] × [0,b]` has the exponentials over `(1/a)Z × (1/b)Z` as a
//! tight frame: restricting the box's orthogonal basis gives `Σ_λ f(x − λ) = ab |Ω|`, so in
//! the `|Ω|²`-normalized convention `A = B = ab / |Ω|`.

use serde::{Deserialize, Serialize};

use super::empty_cube::{check_empty_cube_bounds, EmptyCubeReport};
use crate::error::Result;
use crate::geometry::{AxisBox, Domain};
use crate::pointsets::{Lattice, PointSet};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub domain: Domain,
    pub points: PointSet,
    pub a: f64,
    pub b: f64,
    pub search_box: AxisBox,
}

impl CorpusEntry {
    /// Entry whose frame is the dual lattice of the domain's bounding box.
    pub fn boxed(name: &'static str, domain: Domain) -> Result<Self> {
        let bb = domain.bounding_box();
        let d = domain.dimension();
        let steps: Vec<f64> = (0..d).map(|j| 1.0 / bb.side(j)).collect();
        let basis = (0..d).map(|i| (0..d).map(|j| if i == j { steps[i] } else { 0.0 }).collect()).collect();
        let ab = bb.volume();
        let bound = ab / domain.volume();
        let reach = steps.iter().fold(0.0f64, |m, s| m.max(*s)) * 10.0;
        Ok(Self {
            name,
            points: PointSet::Lattice(Lattice::new(basis)?),
            a: bound,
            b: bound,
            search_box: AxisBox::cube(d, 0.0, reach)?,
            domain,
        })
    }
}

/// A unit square with ten thin teeth: area 1, perimeter 40, and an intact square of side 1/2.
pub fn comb_polygon() -> Domain {
    let teeth = 10;
    let width = 1.0 / 37.0;
    let height = 1.85;
    let top = 0.5 + height;
    let pitch = (1.0 - width) / (teeth - 1) as f64;
    let mut v = vec![[0.0, 0.0], [1.0, 0.0]];
    for k in (0..teeth).rev() {
        let x0 = k as f64 * pitch;
        let x1 = if k == teeth - 1 { 1.0 } else { x0 + width };
        if k < teeth - 1 {
            v.push([x1, 0.5]);
        }
        v.push([x1, top]);
        v.push([x0, top]);
        if k > 0 {
            v.push([x0, 0.5]);
        }
    }
    Domain::polygon(v).expect("comb vertices form a simple polygon")
}

pub fn l_shape() -> Domain {
    Domain::polygon(vec![[0., 0.], [2., 0.], [2., 1.], [1., 1.], [1., 2.], [0., 2.]]).expect("valid L-shape")
}

pub fn default_corpus() -> Result<Vec<CorpusEntry>> {
    Ok(vec![
        CorpusEntry::boxed("unit-square", Domain::unit_cube(2))?,
        CorpusEntry::boxed("square-side-2", Domain::from_box(vec![[0.0, 2.0], [0.0, 2.0]])?)?,
        CorpusEntry::boxed(
            "square-polygon",
            Domain::polygon(vec![[0., 0.], [1., 0.], [1., 1.], [0., 1.]])?,
        )?,
        CorpusEntry::boxed("rectangle-1x4", Domain::polygon(vec![[0., 0.], [1., 0.], [1., 4.], [0., 4.]])?)?,
        CorpusEntry::boxed("l-shape", l_shape())?,
        CorpusEntry::boxed("right-triangle", Domain::polygon(vec![[0., 0.], [1., 0.], [0., 1.]])?)?,
        CorpusEntry::boxed("comb", comb_polygon())?,
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub name: String,
    pub report: EmptyCubeReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusTable {
    pub rows: Vec<CorpusRow>,
    /// Largest implied constants across the corpus.
    pub c1_max: f64,
    pub c2_max: f64,
}

/// Runs [`check_empty_cube_bounds`] with `α = d − 1` on every entry.
pub fn corpus_table(entries: &[CorpusEntry], delta: f64) -> Result<CorpusTable> {
    let mut rows = Vec::with_capacity(entries.len());
    for e in entries {
        let alpha = e.domain.dimension() as f64 - 1.0;
        let report = check_empty_cube_bounds(&e.domain, &e.points, alpha, e.a, e.b, &e.search_box, delta, None)?;
        rows.push(CorpusRow { name: e.name.to_string(), report });
    }
    let c1_max = rows.iter().map(|r| r.report.c1).fold(0.0, f64::max);
    let c2_max = rows.iter().map(|r| r.report.c2).fold(0.0, f64::max);
    Ok(CorpusTable { rows, c1_max, c2_max })
}
