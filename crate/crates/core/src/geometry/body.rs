use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmc::Halton;

const VERTEX_TOL: f64 = 1e-9;
const MAX_VERTEX_SUBSETS: u64 = 5_000_000;
/// Quasi-Monte Carlo budget for polytope volumes in dimension >= 4.
const POLYTOPE_QMC_SAMPLES: usize = 1 << 18;
const POLYTOPE_QMC_REPLICATES: usize = 8;

/// Origin-symmetric polytope `{x : <n_i, x> <= 1}` in halfspace form.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfspacePolytope {
    dim: usize,
    normals: Vec<Vec<f64>>,
    vertices: Vec<Vec<f64>>,
    half_widths: Vec<f64>,
    volume: f64,
    volume_error: f64,
}

impl HalfspacePolytope {
    pub fn new(dim: usize, normals: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidBody("dimension must be positive".into()));
        }
        if normals.iter().any(|n| n.len() != dim) {
            return Err(Error::InvalidBody(format!("every halfspace normal needs {dim} coordinates")));
        }
        if normals.iter().any(|n| n.iter().all(|&c| c == 0.0) || n.iter().any(|c| !c.is_finite())) {
            return Err(Error::InvalidBody("halfspace normals must be finite and nonzero".into()));
        }
        for n in &normals {
            let has_mirror = normals
                .iter()
                .any(|m| m.iter().zip(n).all(|(a, b)| (a + b).abs() <= 1e-12 * (1.0 + b.abs())));
            if !has_mirror {
                return Err(Error::InvalidBody(format!("halfspace set is not symmetric: {n:?} has no mirror")));
            }
        }
        let rank = DMatrix::from_fn(normals.len(), dim, |i, j| normals[i][j]).rank(1e-12);
        if rank < dim {
            return Err(Error::InvalidBody(
                "unbounded polytope: halfspace normals do not positively span R^d".into(),
            ));
        }

        let vertices = enumerate_vertices(dim, &normals)?;
        let half_widths = (0..dim)
            .map(|j| vertices.iter().map(|v| v[j].abs()).fold(0.0, f64::max))
            .collect::<Vec<_>>();
        let mut poly = Self { dim, normals, vertices, half_widths, volume: 0.0, volume_error: 0.0 };
        let (volume, volume_error) = match dim {
            1 => (2.0 * poly.half_widths[0], 0.0),
            2 => (polygon_volume(&poly.vertices), 0.0),
            3 => (poly.volume_3d(), 0.0),
            _ => poly.volume_qmc(),
        };
        poly.volume = volume;
        poly.volume_error = volume_error;
        Ok(poly)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn gauge(&self, x: &[f64]) -> f64 {
        self.normals
            .iter()
            .map(|n| n.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Volume via facet pyramids: `|K| = (1/3) Σ_i area(F_i) / |n_i|`.
    fn volume_3d(&self) -> f64 {
        let mut total = 0.0;
        for n in &self.normals {
            let on_facet: Vec<&Vec<f64>> = self
                .vertices
                .iter()
                .filter(|v| (dot(n, v) - 1.0).abs() <= VERTEX_TOL)
                .collect();
            if on_facet.len() < 3 {
                continue;
            }
            let norm = dot(n, n).sqrt();
            let unit = [n[0] / norm, n[1] / norm, n[2] / norm];
            // in-plane orthonormal basis
            let helper = if unit[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let mut e1 = cross(unit, helper);
            let l1 = dot(&e1, &e1).sqrt();
            e1.iter_mut().for_each(|c| *c /= l1);
            let e2 = cross(unit, e1);
            let pts: Vec<Vec<f64>> = on_facet.iter().map(|v| vec![dot(v, &e1), dot(v, &e2)]).collect();
            total += polygon_volume(&pts) / norm;
        }
        total / 3.0
    }

    fn volume_qmc(&self) -> (f64, f64) {
        let box_volume: f64 = self.half_widths.iter().map(|w| 2.0 * w).product();
        let per = POLYTOPE_QMC_SAMPLES / POLYTOPE_QMC_REPLICATES;
        let estimates: Vec<f64> = (0..POLYTOPE_QMC_REPLICATES)
            .map(|r| {
                let halton = Halton::shifted(self.dim, 0x5eed_0000 + r as u64);
                let mut x = vec![0.0; self.dim];
                let hits = (0..per)
                    .filter(|&i| {
                        let u = halton.point(i as u64);
                        for j in 0..self.dim {
                            x[j] = (2.0 * u[j] - 1.0) * self.half_widths[j];
                        }
                        self.gauge(&x) <= 1.0
                    })
                    .count();
                box_volume * hits as f64 / per as f64
            })
            .collect();
        let m = estimates.len() as f64;
        let mean = estimates.iter().sum::<f64>() / m;
        let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (m - 1.0);
        (mean, (var / m).sqrt())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Area of a convex polygon given by unordered planar points around an interior point.
fn polygon_volume(points: &[Vec<f64>]) -> f64 {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / n;
    let mut sorted: Vec<&Vec<f64>> = points.iter().collect();
    sorted.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    let k = sorted.len();
    let twice: f64 = (0..k)
        .map(|i| {
            let p = sorted[i];
            let q = sorted[(i + 1) % k];
            p[0] * q[1] - q[0] * p[1]
        })
        .sum();
    0.5 * twice.abs()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All vertices of the polytope: feasible intersections of `dim` bounding hyperplanes.
fn enumerate_vertices(dim: usize, normals: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let m = normals.len();
    if binomial(m as u64, dim as u64) > MAX_VERTEX_SUBSETS {
        return Err(Error::InvalidBody(format!(
            "{m} halfspaces in dimension {dim} exceed the vertex enumeration budget"
        )));
    }
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let a = DMatrix::from_fn(dim, dim, |i, j| normals[subset[i]][j]);
        if let Some(sol) = a.lu().solve(&DVector::from_element(dim, 1.0)) {
            let v: Vec<f64> = sol.iter().copied().collect();
            let feasible = v.iter().all(|c| c.is_finite())
                && normals.iter().all(|n| dot(n, &v) <= 1.0 + VERTEX_TOL);
            if feasible
                && !vertices
                    .iter()
                    .any(|w| w.iter().zip(&v).all(|(p, q)| (p - q).abs() <= VERTEX_TOL))
            {
                vertices.push(v);
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(vertices);
            }
            i -= 1;
            if subset[i] < m - dim + i {
                subset[i] += 1;
                for k in (i + 1)..dim {
                    subset[k] = subset[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Origin-symmetric convex body `K` supplying the gauge `||·||_K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodySpec", into = "BodySpec")]
pub enum ConvexBody {
    /// Euclidean ball of the given radius.
    Ball { dim: usize, radius: f64 },
    /// Cube `[-radius, radius]^d`.
    Cube { dim: usize, radius: f64 },
    Polytope(HalfspacePolytope),
}

impl ConvexBody {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        check_radius(dim, radius)?;
        Ok(ConvexBody::Ball { dim, radius })
    }

    pub fn cube(dim: usize, radius: f64) -> Result<Self> {
        check_radius(dim, radius)?;
        Ok(ConvexBody::Cube { dim, radius })
    }

    pub fn unit_ball(dim: usize) -> Self {
        ConvexBody::Ball { dim, radius: 1.0 }
    }

    /// The cube `[-1, 1]^d`.
    pub fn unit_cube(dim: usize) -> Self {
        ConvexBody::Cube { dim, radius: 1.0 }
    }

    pub fn polytope(dim: usize, normals: Vec<Vec<f64>>) -> Result<Self> {
        HalfspacePolytope::new(dim, normals).map(ConvexBody::Polytope)
    }

    pub fn dimension(&self) -> usize {
        match self {
            ConvexBody::Ball { dim, .. } | ConvexBody::Cube { dim, .. } => *dim,
            ConvexBody::Polytope(p) => p.dim,
        }
    }

    /// Minkowski functional `inf {t > 0 : x ∈ tK}`.
    pub fn norm(&self, x: &[f64]) -> f64 {
        match self {
            ConvexBody::Ball { radius, .. } => x.iter().map(|c| c * c).sum::<f64>().sqrt() / radius,
            ConvexBody::Cube { radius, .. } => x.iter().fold(0.0, |m, c| f64::max(m, c.abs())) / radius,
            ConvexBody::Polytope(p) => p.gauge(x),
        }
    }

    /// Gauge of `x - center` without allocating.
    pub fn norm_from(&self, x: &[f64], center: &[f64]) -> f64 {
        match self {
            ConvexBody::Ball { radius, .. } => {
                x.iter().zip(center).map(|(a, c)| (a - c) * (a - c)).sum::<f64>().sqrt() / radius
            }
            ConvexBody::Cube { radius, .. } => {
                x.iter().zip(center).fold(0.0, |m, (a, c)| f64::max(m, (a - c).abs())) / radius
            }
            ConvexBody::Polytope(p) => p
                .normals
                .iter()
                .map(|n| n.iter().zip(x.iter().zip(center)).map(|(w, (a, c))| w * (a - c)).sum::<f64>())
                .fold(0.0, f64::max),
        }
    }

    /// `|K|`. Exact for balls, cubes and polytopes in d <= 3; see [`ConvexBody::volume_error`].
    pub fn volume(&self) -> f64 {
        match self {
            ConvexBody::Ball { dim, radius } => unit_ball_volume(*dim) * radius.powi(*dim as i32),
            ConvexBody::Cube { dim, radius } => (2.0 * radius).powi(*dim as i32),
            ConvexBody::Polytope(p) => p.volume,
        }
    }

    /// Standard error of [`ConvexBody::volume`]; zero whenever the volume is exact.
    pub fn volume_error(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.volume_error,
            _ => 0.0,
        }
    }

    /// Half-widths of the smallest axis-aligned box containing `K`.
    pub fn half_widths(&self) -> Vec<f64> {
        match self {
            ConvexBody::Ball { dim, radius } | ConvexBody::Cube { dim, radius } => vec![*radius; *dim],
            ConvexBody::Polytope(p) => p.half_widths.clone(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.norm(x) <= 1.0
    }
}

fn check_radius(dim: usize, radius: f64) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidBody("dimension must be positive".into()));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidBody(format!("radius must be positive, got {radius}")));
    }
    Ok(())
}

/// `ω_d`, the volume of the Euclidean unit ball.
pub fn unit_ball_volume(dim: usize) -> f64 {
    let mut omega = [1.0, 2.0];
    for k in 2..=dim {
        let next = 2.0 * std::f64::consts::PI / k as f64 * omega[k % 2];
        omega[k % 2] = next;
    }
    omega[dim % 2]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyKind {
    Ball,
    Cube,
    Polytope,
}

/// Wire form of [`ConvexBody`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodySpec {
    pub dimension: usize,
    pub kind: BodyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub halfspaces: Vec<Vec<f64>>,
}

impl TryFrom<BodySpec> for ConvexBody {
    type Error = Error;

    fn try_from(spec: BodySpec) -> Result<Self> {
        let radius = spec.radius.unwrap_or(1.0);
        match spec.kind {
            BodyKind::Ball => ConvexBody::ball(spec.dimension, radius),
            BodyKind::Cube => ConvexBody::cube(spec.dimension, radius),
            BodyKind::Polytope => ConvexBody::polytope(spec.dimension, spec.halfspaces),
        }
    }
}

impl From<ConvexBody> for BodySpec {
    fn from(body: ConvexBody) -> Self {
        match body {
            ConvexBody::Ball { dim, radius } => {
                BodySpec { dimension: dim, kind: BodyKind::Ball, radius: Some(radius), halfspaces: vec![] }
            }
            ConvexBody::Cube { dim, radius } => {
                BodySpec { dimension: dim, kind: BodyKind::Cube, radius: Some(radius), halfspaces: vec![] }
            }
            ConvexBody::Polytope(p) => {
                BodySpec { dimension: p.dim, kind: BodyKind::Polytope, radius: None, halfspaces: p.normals }
            }
        }
    }
}
