use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned box `[a_1,b_1] x ... x [a_d,b_d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisBox {
    intervals: Vec<[f64; 2]>,
}

impl AxisBox {
    pub fn new(intervals: Vec<[f64; 2]>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidDomain("box needs at least one coordinate".into()));
        }
        for (j, [a, b]) in intervals.iter().enumerate() {
            if !(a.is_finite() && b.is_finite()) || b <= a {
                return Err(Error::InvalidDomain(format!(
                    "box coordinate {j}: need finite a < b, got [{a}, {b}]"
                )));
            }
        }
        Ok(Self { intervals })
    }

    /// The cube `[lo, hi]^d`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![[lo, hi]; dim])
    }

    pub fn unit_cube(dim: usize) -> Self {
        Self::cube(dim, 0.0, 1.0).expect("unit cube is valid")
    }

    pub fn dimension(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[[f64; 2]] {
        &self.intervals
    }

    pub fn lo(&self, j: usize) -> f64 {
        self.intervals[j][0]
    }

    pub fn hi(&self, j: usize) -> f64 {
        self.intervals[j][1]
    }

    pub fn side(&self, j: usize) -> f64 {
        self.intervals[j][1] - self.intervals[j][0]
    }

    pub fn volume(&self) -> f64 {
        (0..self.dimension()).map(|j| self.side(j)).product()
    }

    pub fn min_side(&self) -> f64 {
        (0..self.dimension()).map(|j| self.side(j)).fold(f64::INFINITY, f64::min)
    }

    pub fn center(&self) -> Vec<f64> {
        self.intervals.iter().map(|[a, b]| 0.5 * (a + b)).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.intervals.iter().zip(x).all(|([a, b], &v)| *a <= v && v <= *b)
    }

    /// Volume of the intersection with another box of the same dimension.
    pub fn overlap_volume(&self, other: &AxisBox) -> f64 {
        self.intervals
            .iter()
            .zip(&other.intervals)
            .map(|([a, b], [c, e])| (b.min(*e) - a.max(*c)).max(0.0))
            .product()
    }

    /// Volume of the intersection with the open cube of half-width `h` centred at `x`.
    pub(crate) fn overlap_with_cube(&self, x: &[f64], h: f64) -> f64 {
        self.intervals
            .iter()
            .zip(x)
            .map(|([a, b], &c)| (b.min(c + h) - a.max(c - h)).max(0.0))
            .product()
    }

    pub fn translated(&self, shift: &[f64]) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .zip(shift)
                .map(|([a, b], s)| [a + s, b + s])
                .collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .map(|[a, b]| [a * factor, b * factor])
                .collect(),
        }
    }
}

/// Simple polygon in the plane, stored counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<[f64; 2]>,
}

impl Polygon {
    /// Validates simplicity and positive area; clockwise input is reversed.
    pub fn new(mut vertices: Vec<[f64; 2]>) -> Result<Self> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidDomain(format!("polygon needs >= 3 vertices, got {n}")));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidDomain("polygon vertex is not finite".into()));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidDomain(format!("polygon edge {i} has zero length")));
            }
        }
        let area = signed_area(&vertices);
        if area == 0.0 {
            return Err(Error::InvalidDomain("degenerate polygon has zero area".into()));
        }
        check_simple(&vertices)?;
        if area < 0.0 {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    /// Edges as `(start, end)` pairs in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices).abs()
    }

    pub fn perimeter(&self) -> f64 {
        self.edges()
            .map(|(p, q)| (q[0] - p[0]).hypot(q[1] - p[1]))
            .sum()
    }

    /// Even-odd point-in-polygon test. Points on the boundary may go either way.
    pub fn contains(&self, x: &[f64]) -> bool {
        let (px, py) = (x[0], x[1]);
        let mut inside = false;
        for (p, q) in self.edges() {
            if (p[1] > py) != (q[1] > py) {
                let t = (py - p[1]) / (q[1] - p[1]);
                if px < p[0] + t * (q[0] - p[0]) {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn bounding_box(&self) -> AxisBox {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for j in 0..2 {
                lo[j] = lo[j].min(v[j]);
                hi[j] = hi[j].max(v[j]);
            }
        }
        AxisBox { intervals: vec![[lo[0], hi[0]], [lo[1], hi[1]]] }
    }

    pub fn is_rectilinear(&self) -> bool {
        self.edges().all(|(p, q)| p[0] == q[0] || p[1] == q[1])
    }

    pub fn translated(&self, shift: &[f64]) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0] + shift[0], v[1] + shift[1]])
                .collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| [v[0] * factor, v[1] * factor]).collect(),
        }
    }
}

fn signed_area(vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let p = vertices[i];
            let q = vertices[(i + 1) % n];
            p[0] * q[1] - q[0] * p[1]
        })
        .sum();
    0.5 * twice
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0)) {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

fn check_simple(v: &[[f64; 2]]) -> Result<()> {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Adjacent edges share one endpoint; they must not fold back onto each other.
                let (shared, other_i, other_j) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if orient(other_i, shared, other_j) == 0.0 {
                    let u = [other_i[0] - shared[0], other_i[1] - shared[1]];
                    let w = [other_j[0] - shared[0], other_j[1] - shared[1]];
                    if u[0] * w[0] + u[1] * w[1] > 0.0 {
                        return Err(Error::InvalidDomain(format!("polygon edges {i} and {j} overlap")));
                    }
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Err(Error::InvalidDomain(format!("polygon edges {i} and {j} intersect")));
            }
        }
    }
    Ok(())
}

/// The kind tag used in the JSON representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainKind {
    Box,
    BoxUnion,
    Polygon2d,
}

/// A bounded region: a box, a finite union of boxes disjoint up to measure zero, or a
/// simple polygon in the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DomainSpec", into = "DomainSpec")]
pub enum Domain {
    Box(AxisBox),
    BoxUnion(Vec<AxisBox>),
    Polygon(Polygon),
}

impl Domain {
    pub fn unit_cube(dim: usize) -> Self {
        Domain::Box(AxisBox::unit_cube(dim))
    }

    pub fn from_box(intervals: Vec<[f64; 2]>) -> Result<Self> {
        AxisBox::new(intervals).map(Domain::Box)
    }

    pub fn box_union(boxes: Vec<AxisBox>) -> Result<Self> {
        if boxes.is_empty() {
            return Err(Error::InvalidDomain("box union needs at least one box".into()));
        }
        let d = boxes[0].dimension();
        if boxes.iter().any(|b| b.dimension() != d) {
            return Err(Error::InvalidDomain("box union members differ in dimension".into()));
        }
        for i in 0..boxes.len() {
            for j in (i + 1)..boxes.len() {
                if boxes[i].overlap_volume(&boxes[j]) > 0.0 {
                    return Err(Error::InvalidDomain(format!("boxes {i} and {j} overlap")));
                }
            }
        }
        Ok(Domain::BoxUnion(boxes))
    }

    pub fn polygon(vertices: Vec<[f64; 2]>) -> Result<Self> {
        Polygon::new(vertices).map(Domain::Polygon)
    }

    pub fn kind(&self) -> DomainKind {
        match self {
            Domain::Box(_) => DomainKind::Box,
            Domain::BoxUnion(_) => DomainKind::BoxUnion,
            Domain::Polygon(_) => DomainKind::Polygon2d,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Domain::Box(b) => b.dimension(),
            Domain::BoxUnion(bs) => bs[0].dimension(),
            Domain::Polygon(_) => 2,
        }
    }

    /// Lebesgue measure `|Ω|`.
    pub fn volume(&self) -> f64 {
        match self {
            Domain::Box(b) => b.volume(),
            Domain::BoxUnion(bs) => bs.iter().map(AxisBox::volume).sum(),
            Domain::Polygon(p) => p.area(),
        }
    }

    pub fn bounding_box(&self) -> AxisBox {
        match self {
            Domain::Box(b) => b.clone(),
            Domain::BoxUnion(bs) => {
                let d = bs[0].dimension();
                let intervals = (0..d)
                    .map(|j| {
                        let lo = bs.iter().map(|b| b.lo(j)).fold(f64::INFINITY, f64::min);
                        let hi = bs.iter().map(|b| b.hi(j)).fold(f64::NEG_INFINITY, f64::max);
                        [lo, hi]
                    })
                    .collect();
                AxisBox { intervals }
            }
            Domain::Polygon(p) => p.bounding_box(),
        }
    }

    /// Euclidean diameter of the bounding box.
    pub fn bounding_diameter(&self) -> f64 {
        let bb = self.bounding_box();
        (0..bb.dimension()).map(|j| bb.side(j).powi(2)).sum::<f64>().sqrt()
    }

    /// Volume of `Ω ∩ Q` where `Q` is the open cube of half-width `h` about `x`.
    pub(crate) fn overlap_with_cube(&self, x: &[f64], h: f64) -> Option<f64> {
        match self {
            Domain::Box(b) => Some(b.overlap_with_cube(x, h)),
            Domain::BoxUnion(bs) => Some(bs.iter().map(|b| b.overlap_with_cube(x, h)).sum()),
            Domain::Polygon(_) => None,
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Domain::Box(b) => b.contains(x),
            Domain::BoxUnion(bs) => bs.iter().any(|b| b.contains(x)),
            Domain::Polygon(p) => p.contains(x),
        }
    }

    pub fn translated(&self, shift: &[f64]) -> Self {
        match self {
            Domain::Box(b) => Domain::Box(b.translated(shift)),
            Domain::BoxUnion(bs) => Domain::BoxUnion(bs.iter().map(|b| b.translated(shift)).collect()),
            Domain::Polygon(p) => Domain::Polygon(p.translated(shift)),
        }
    }

    /// Dilation `factor · Ω` about the origin; `factor` must be positive.
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(factor > 0.0, "scale factor must be positive");
        match self {
            Domain::Box(b) => Domain::Box(b.scaled(factor)),
            Domain::BoxUnion(bs) => Domain::BoxUnion(bs.iter().map(|b| b.scaled(factor)).collect()),
            Domain::Polygon(p) => Domain::Polygon(p.scaled(factor)),
        }
    }

    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            Domain::Polygon(p) => Some(p),
            _ => None,
        }
    }

    /// Member boxes for box kinds.
    pub fn boxes(&self) -> &[AxisBox] {
        match self {
            Domain::Box(b) => std::slice::from_ref(b),
            Domain::BoxUnion(bs) => bs,
            Domain::Polygon(_) => &[],
        }
    }
}

/// Wire form of [`Domain`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainSpec {
    pub dimension: usize,
    pub kind: DomainKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boxes: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polygon: Vec<[f64; 2]>,
}

impl TryFrom<DomainSpec> for Domain {
    type Error = Error;

    fn try_from(spec: DomainSpec) -> Result<Self> {
        let domain = match spec.kind {
            DomainKind::Box => {
                if spec.boxes.len() != 1 {
                    return Err(Error::InvalidDomain(format!(
                        "kind \"box\" needs exactly one box, got {}",
                        spec.boxes.len()
                    )));
                }
                Domain::from_box(spec.boxes.into_iter().next().unwrap())?
            }
            DomainKind::BoxUnion => {
                let boxes = spec.boxes.into_iter().map(AxisBox::new).collect::<Result<Vec<_>>>()?;
                Domain::box_union(boxes)?
            }
            DomainKind::Polygon2d => Domain::polygon(spec.polygon)?,
        };
        if domain.dimension() != spec.dimension {
            return Err(Error::InvalidDomain(format!(
                "declared dimension {} but geometry has dimension {}",
                spec.dimension,
                domain.dimension()
            )));
        }
        Ok(domain)
    }
}

impl From<Domain> for DomainSpec {
    fn from(domain: Domain) -> Self {
        let dimension = domain.dimension();
        let kind = domain.kind();
        match domain {
            Domain::Box(b) => DomainSpec { dimension, kind, boxes: vec![b.intervals], polygon: vec![] },
            Domain::BoxUnion(bs) => DomainSpec {
                dimension,
                kind,
                boxes: bs.into_iter().map(|b| b.intervals).collect(),
                polygon: vec![],
            },
            Domain::Polygon(p) => DomainSpec { dimension, kind, boxes: vec![], polygon: p.vertices },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_cube_volume() {
        for d in 1..=4 {
            assert_eq!(Domain::unit_cube(d).volume(), 1.0);
        }
    }

    #[test]
    fn disjoint_union_is_additive() {
        let a = AxisBox::new(vec![[0.0, 1.0], [0.0, 1.0]]).unwrap();
        let b = AxisBox::new(vec![[2.0, 3.0], [0.0, 2.0]]).unwrap();
        assert_eq!(Domain::box_union(vec![a, b]).unwrap().volume(), 3.0);
    }

    #[test]
    fn touching_boxes_are_disjoint_up_to_measure_zero() {
        let a = AxisBox::new(vec![[0.0, 1.0], [0.0, 1.0]]).unwrap();
        let b = AxisBox::new(vec![[1.0, 2.0], [0.0, 1.0]]).unwrap();
        assert!(Domain::box_union(vec![a.clone(), b]).is_ok());
        let c = AxisBox::new(vec![[0.5, 2.0], [0.0, 1.0]]).unwrap();
        assert!(Domain::box_union(vec![a, c]).is_err());
    }

    #[test]
    fn l_shape_shoelace() {
        let l = Domain::polygon(vec![[0., 0.], [2., 0.], [2., 1.], [1., 1.], [1., 2.], [0., 2.]]).unwrap();
        assert_eq!(l.volume(), 3.0);
    }

    #[test]
    fn clockwise_polygon_is_reoriented() {
        let p = Polygon::new(vec![[0., 0.], [0., 1.], [1., 1.], [1., 0.]]).unwrap();
        assert!(signed_area(p.vertices()) > 0.0);
    }

    #[test]
    fn degenerate_and_self_intersecting_polygons_rejected() {
        let flat = Domain::polygon(vec![[0., 0.], [1., 0.], [2., 0.]]);
        assert!(matches!(flat, Err(Error::InvalidDomain(_))));
        let bowtie = Domain::polygon(vec![[0., 0.], [1., 1.], [1., 0.], [0., 1.]]);
        assert!(matches!(bowtie, Err(Error::InvalidDomain(_))));
        assert!(Domain::polygon(vec![[0., 0.], [1., 0.]]).is_err());
    }

    #[test]
    fn inverted_box_rejected() {
        assert!(Domain::from_box(vec![[1.0, 0.0]]).is_err());
    }

    #[test]
    fn json_round_trip_and_dimension_check() {
        let json = r#"{"dimension": 2, "kind": "box-union", "boxes": [[[0,1],[0,1]], [[2,3],[0,2]]]}"#;
        let dom: Domain = serde_json::from_str(json).unwrap();
        assert_eq!(dom.volume(), 3.0);
        let back: Domain = serde_json::from_str(&serde_json::to_string(&dom).unwrap()).unwrap();
        assert_eq!(back, dom);

        let bad = r#"{"dimension": 3, "kind": "box", "boxes": [[[0,1],[0,1]]]}"#;
        assert!(serde_json::from_str::<Domain>(bad).is_err());
        let poly = r#"{"dimension": 2, "kind": "polygon2d", "polygon": [[0,0],[1,0],[1,1],[0,1]]}"#;
        assert_eq!(serde_json::from_str::<Domain>(poly).unwrap().volume(), 1.0);
    }
}
