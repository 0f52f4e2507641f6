//! Exponent sets `Λ` and their enumeration inside `K`-balls.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;

/// Flat row-major storage of `d`-dimensional points.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Points {
    dim: usize,
    coords: Vec<f64>,
}

impl Points {
    pub fn new(dim: usize) -> Self {
        Self { dim, coords: Vec::new() }
    }

    pub fn from_rows(dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPointSet("dimension must be positive".into()));
        }
        let mut p = Self::new(dim);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::InvalidPointSet(format!("point {i} has {} coordinates, expected {dim}", r.len())));
            }
            if r.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidPointSet(format!("point {i} has a non-finite coordinate")));
            }
            p.push(r);
        }
        Ok(p)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn push(&mut self, p: &[f64]) {
        debug_assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim.max(1))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }
}

/// The closed ball `{λ : ||λ − center||_K ≤ radius}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub body: ConvexBody,
    pub radius: f64,
    pub center: Vec<f64>,
}

impl Window {
    pub fn new(body: ConvexBody, radius: f64, center: Vec<f64>) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("window radius must be nonnegative, got {radius}")));
        }
        if center.len() != body.dimension() {
            return Err(Error::InvalidArgument("window center and body dimensions differ".into()));
        }
        Ok(Self { body, radius, center })
    }

    /// Window about the origin.
    pub fn centered(body: ConvexBody, radius: f64) -> Result<Self> {
        let d = body.dimension();
        Self::new(body, radius, vec![0.0; d])
    }

    /// The closed cube `Q_R(x)` of side `2R`.
    pub fn cube(radius: f64, center: Vec<f64>) -> Result<Self> {
        Self::new(ConvexBody::unit_cube(center.len()), radius, center)
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.body.norm_from(p, &self.center) <= self.radius
    }

    /// Axis-aligned bounding box `[lo_j, hi_j]` of the window.
    pub fn bounds(&self) -> Vec<[f64; 2]> {
        self.body
            .half_widths()
            .iter()
            .zip(&self.center)
            .map(|(w, c)| [c - self.radius * w, c + self.radius * w])
            .collect()
    }
}

/// `Λ = B^T Z^d` for a basis whose rows are the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    basis: Vec<Vec<f64>>,
    /// `(B^T)^{-1}`, mapping points to integer coordinates.
    inverse: Vec<Vec<f64>>,
}

impl Lattice {
    pub fn integer(dim: usize) -> Self {
        Self::scaled_integer(dim, 1.0).expect("identity basis is valid")
    }

    pub fn scaled_integer(dim: usize, scale: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPointSet("dimension must be positive".into()));
        }
        let basis = (0..dim).map(|i| (0..dim).map(|j| if i == j { scale } else { 0.0 }).collect()).collect();
        Self::new(basis)
    }

    pub fn new(basis: Vec<Vec<f64>>) -> Result<Self> {
        let d = basis.len();
        if d == 0 || basis.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidPointSet("lattice basis must be a nonempty square matrix".into()));
        }
        let bt = DMatrix::from_fn(d, d, |i, j| basis[j][i]);
        let inv = bt
            .try_inverse()
            .filter(|m| m.iter().all(|v| v.is_finite()))
            .ok_or_else(|| Error::InvalidPointSet("lattice basis is singular".into()))?;
        let inverse = (0..d).map(|i| (0..d).map(|j| inv[(i, j)]).collect()).collect();
        Ok(Self { basis, inverse })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    fn point(&self, n: &[i64], out: &mut [f64]) {
        for (j, o) in out.iter_mut().enumerate() {
            *o = n.iter().zip(&self.basis).map(|(&k, b)| k as f64 * b[j]).sum();
        }
    }

    /// Integer index ranges covering the axis-aligned box `bounds`.
    fn index_ranges(&self, bounds: &[[f64; 2]]) -> Vec<(i64, i64)> {
        self.inverse
            .iter()
            .map(|row| {
                let mut lo = 0.0;
                let mut hi = 0.0;
                for (m, b) in row.iter().zip(bounds) {
                    let (a, c) = (m * b[0], m * b[1]);
                    lo += a.min(c);
                    hi += a.max(c);
                }
                ((lo - 1e-9).floor() as i64, (hi + 1e-9).ceil() as i64)
            })
            .collect()
    }
}

/// Column offsets `t(v) ∈ [0, 1)` for `v ∈ Z^{d-1}`; unlisted columns have offset 0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ColumnOffsets {
    table: BTreeMap<Vec<i64>, f64>,
}

impl ColumnOffsets {
    pub fn new(table: BTreeMap<Vec<i64>, f64>) -> Result<Self> {
        for (v, &t) in &table {
            if !(0.0..1.0).contains(&t) {
                return Err(Error::InvalidOffsets(format!("offset {t} for column {v:?} is outside [0, 1)")));
            }
        }
        Ok(Self { table })
    }

    pub fn get(&self, v: &[i64]) -> f64 {
        self.table.get(v).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<i64>, &f64)> {
        self.table.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointSetKind {
    Explicit,
    Lattice,
    ColumnTiling,
    Example1,
}

/// An exponent set `Λ ⊂ R^d`.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSet {
    Explicit(Points),
    Lattice(Lattice),
    /// `{(v, k + t(v)) : v ∈ Z^{d-1}, k ∈ Z}`.
    ColumnTiling { dim: usize, offsets: ColumnOffsets },
    /// Column tiling whose offsets put one point of every column `|v| ≤ R_i` on the sphere
    /// of the smallest such radius `R_i`.
    Example1 { dim: usize, radii: Vec<f64> },
}

pub fn column_tiling_spectrum(dim: usize, offsets: ColumnOffsets) -> Result<PointSet> {
    if dim < 2 {
        return Err(Error::InvalidPointSet("column tilings need dimension at least 2".into()));
    }
    if let Some((v, _)) = offsets.entries().find(|(v, _)| v.len() != dim - 1) {
        return Err(Error::InvalidOffsets(format!("column {v:?} should have {} coordinates", dim - 1)));
    }
    Ok(PointSet::ColumnTiling { dim, offsets })
}

pub fn construct_example1(dim: usize, radii: Vec<f64>) -> Result<PointSet> {
    if dim < 2 {
        return Err(Error::InvalidPointSet("the construction needs dimension at least 2".into()));
    }
    if radii.iter().any(|r| !(r.is_finite() && *r >= 1.0)) {
        return Err(Error::InvalidArgument("radii must be finite and at least 1".into()));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("radii must be strictly increasing".into()));
    }
    Ok(PointSet::Example1 { dim, radii })
}

/// Index of the smallest radius with `|v|² ≤ R_i²`, if any.
fn assigned_sphere(radii: &[f64], v2: f64) -> Option<usize> {
    radii.iter().position(|r| v2 <= r * r)
}

fn example1_offset(radii: &[f64], v: &[i64]) -> f64 {
    let v2 = v.iter().map(|&k| (k * k) as f64).sum::<f64>();
    match assigned_sphere(radii, v2) {
        Some(i) => {
            let s = (radii[i] * radii[i] - v2).sqrt();
            s - s.floor()
        }
        None => 0.0,
    }
}

impl PointSet {
    pub fn explicit(points: Points) -> Self {
        PointSet::Explicit(points)
    }

    pub fn integer_lattice(dim: usize) -> Self {
        PointSet::Lattice(Lattice::integer(dim))
    }

    pub fn scaled_lattice(dim: usize, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidPointSet(format!("lattice scale must be positive, got {scale}")));
        }
        Lattice::scaled_integer(dim, scale).map(PointSet::Lattice)
    }

    pub fn kind(&self) -> PointSetKind {
        match self {
            PointSet::Explicit(_) => PointSetKind::Explicit,
            PointSet::Lattice(_) => PointSetKind::Lattice,
            PointSet::ColumnTiling { .. } => PointSetKind::ColumnTiling,
            PointSet::Example1 { .. } => PointSetKind::Example1,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            PointSet::Explicit(p) => p.dimension(),
            PointSet::Lattice(l) => l.dimension(),
            PointSet::ColumnTiling { dim, .. } | PointSet::Example1 { dim, .. } => *dim,
        }
    }

    /// Whether `Λ + γ = Λ` for a full-rank set of periods `γ`.
    pub fn is_periodic(&self) -> bool {
        match self {
            PointSet::Lattice(_) => true,
            PointSet::ColumnTiling { offsets, .. } => offsets.entries().all(|(_, &t)| t == 0.0),
            PointSet::Example1 { radii, .. } => radii.is_empty(),
            PointSet::Explicit(_) => false,
        }
    }

    /// Column offset `t(v)` for the column kinds.
    pub fn column_offset(&self, v: &[i64]) -> Option<f64> {
        match self {
            PointSet::ColumnTiling { offsets, .. } => Some(offsets.get(v)),
            PointSet::Example1 { radii, .. } => Some(example1_offset(radii, v)),
            _ => None,
        }
    }

    fn check_window(&self, w: &Window) -> Result<()> {
        if w.dimension() != self.dimension() {
            return Err(Error::InvalidPointSet(format!(
                "point set has dimension {}, window has {}",
                self.dimension(),
                w.dimension()
            )));
        }
        Ok(())
    }

    /// Visits every point of the window in enumeration order.
    fn visit(&self, w: &Window, mut f: impl FnMut(&[f64])) -> Result<()> {
        self.check_window(w)?;
        let d = self.dimension();
        let bounds = w.bounds();
        let mut buf = vec![0.0; d];
        match self {
            PointSet::Explicit(points) => {
                for p in points.iter() {
                    if w.contains(p) {
                        f(p);
                    }
                }
            }
            PointSet::Lattice(lat) => {
                let ranges = lat.index_ranges(&bounds);
                for_each_index(&ranges, |n| {
                    lat.point(n, &mut buf);
                    if w.contains(&buf) {
                        f(&buf);
                    }
                });
            }
            PointSet::ColumnTiling { .. } | PointSet::Example1 { .. } => {
                let ranges: Vec<(i64, i64)> =
                    bounds[..d - 1].iter().map(|b| ((b[0] - 1e-9).ceil() as i64, (b[1] + 1e-9).floor() as i64)).collect();
                let [zlo, zhi] = bounds[d - 1];
                for_each_index(&ranges, |v| {
                    let t = self.column_offset(v).unwrap_or(0.0);
                    for (o, &k) in buf.iter_mut().zip(v) {
                        *o = k as f64;
                    }
                    let k0 = (zlo - t - 1e-9).ceil() as i64;
                    let k1 = (zhi - t + 1e-9).floor() as i64;
                    for k in k0..=k1 {
                        buf[d - 1] = k as f64 + t;
                        if w.contains(&buf) {
                            f(&buf);
                        }
                    }
                });
            }
        }
        Ok(())
    }

    /// All points `λ` with `||λ − x||_K ≤ R`, in deterministic index order.
    pub fn enumerate(&self, w: &Window) -> Result<Points> {
        let mut out = Points::new(self.dimension());
        self.visit(w, |p| out.push(p))?;
        Ok(out)
    }

    /// Number of points in the window, without materializing them.
    pub fn count(&self, w: &Window) -> Result<usize> {
        let mut n = 0usize;
        self.visit(w, |_| n += 1)?;
        Ok(n)
    }

    /// Explicit copy of the points inside a window.
    pub fn materialize(&self, w: &Window) -> Result<PointSet> {
        self.enumerate(w).map(PointSet::Explicit)
    }
}

/// Calls `f` on every integer vector in the product of inclusive ranges, lexicographically.
pub(crate) fn for_each_index(ranges: &[(i64, i64)], mut f: impl FnMut(&[i64])) {
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return;
    }
    let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
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
                for j in axis + 1..ranges.len() {
                    idx[j] = ranges[j].0;
                }
                break;
            }
        }
    }
}

/// Points of the columns assigned to sphere `i`, placed on that sphere (upper hemisphere).
///
/// Returns `None` when `ps` is not an Example-1 set or `i` is out of range.
pub fn example1_sphere_points(ps: &PointSet, i: usize) -> Option<Points> {
    let PointSet::Example1 { dim, radii } = ps else { return None };
    let r = *radii.get(i)?;
    let inner = if i == 0 { -1.0 } else { radii[i - 1] * radii[i - 1] };
    let m = r.floor() as i64;
    let mut out = Points::new(*dim);
    let mut buf = vec![0.0; *dim];
    for_each_index(&vec![(-m, m); dim - 1], |v| {
        let v2 = v.iter().map(|&k| (k * k) as f64).sum::<f64>();
        if v2 > inner && v2 <= r * r {
            let t = example1_offset(radii, v);
            let s = (r * r - v2).sqrt();
            for (o, &k) in buf.iter_mut().zip(v) {
                *o = k as f64;
            }
            buf[dim - 1] = s.floor() + t;
            out.push(&buf);
        }
    });
    Some(out)
}
