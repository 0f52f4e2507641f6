//! The power spectrum `f = |χ̂_Ω|²` and an explicit pointwise majorant.

use std::f64::consts::PI;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use super::transform::ft_indicator;
use crate::geometry::{AxisBox, Domain, Polygon};

/// Memoization policy for [`PowerSpectrum::eval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "kebab-case")]
pub enum CachePolicy {
    None,
    /// Cache points whose coordinates are exact multiples of `1 / denominator`.
    RationalGrid { denominator: u32 },
}

#[derive(Debug)]
pub struct PowerSpectrum {
    domain: Domain,
    policy: CachePolicy,
    cache: DashMap<Vec<i64>, f64>,
}

impl Clone for PowerSpectrum {
    fn clone(&self) -> Self {
        Self::with_cache(self.domain.clone(), self.policy)
    }
}

impl PowerSpectrum {
    pub fn new(domain: Domain) -> Self {
        Self::with_cache(domain, CachePolicy::None)
    }

    pub fn with_cache(domain: Domain, policy: CachePolicy) -> Self {
        Self { domain, policy, cache: DashMap::new() }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn policy(&self) -> CachePolicy {
        self.policy
    }

    pub fn dimension(&self) -> usize {
        self.domain.dimension()
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.len()
    }

    /// `f(x) = |χ̂_Ω(x)|²`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        if let CachePolicy::RationalGrid { denominator } = self.policy {
            if let Some(key) = grid_key(x, denominator as f64) {
                if let Some(v) = self.cache.get(&key) {
                    return *v;
                }
                let v = ft_indicator(&self.domain, x).norm_sqr();
                // Values are a pure function of the key, so a racing insert stores the same number.
                self.cache.entry(key).or_insert(v);
                return v;
            }
        }
        ft_indicator(&self.domain, x).norm_sqr()
    }

    /// A majorant `g ≥ f` built from per-edge or per-axis decay, used for tail bounds.
    ///
    /// Boxes: `Π_j min(L_j, 1/(π|ξ_j|))²`. Unions: `(Σ_b √g_b)²`. Polygons: the square of
    /// `min(|Ω|, Σ_e |ξ·n_e| L_e / (2π|ξ|²) · min(1, 1/(π|Δ_e·ξ|)))`.
    pub fn envelope(&self, x: &[f64]) -> f64 {
        match &self.domain {
            Domain::Box(b) => box_envelope_sqrt(b, x).powi(2),
            Domain::BoxUnion(bs) => bs.iter().map(|b| box_envelope_sqrt(b, x)).sum::<f64>().powi(2),
            Domain::Polygon(p) => polygon_envelope_sqrt(p, [x[0], x[1]]).powi(2),
        }
    }
}

fn grid_key(x: &[f64], q: f64) -> Option<Vec<i64>> {
    x.iter()
        .map(|&c| {
            let s = c * q;
            (s == s.round() && s.abs() < 9.0e15).then_some(s as i64)
        })
        .collect()
}

fn box_envelope_sqrt(b: &AxisBox, x: &[f64]) -> f64 {
    b.intervals()
        .iter()
        .zip(x)
        .map(|(iv, &t)| {
            let len = iv[1] - iv[0];
            if t == 0.0 { len } else { len.min(1.0 / (PI * t.abs())) }
        })
        .product()
}

fn polygon_envelope_sqrt(p: &Polygon, xi: [f64; 2]) -> f64 {
    let area = p.area();
    let n2 = xi[0] * xi[0] + xi[1] * xi[1];
    if n2 == 0.0 {
        return area;
    }
    let mut s = 0.0;
    for (a, b) in p.edges() {
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let flux = (xi[0] * dy - xi[1] * dx).abs();
        let along = (dx * xi[0] + dy * xi[1]).abs();
        s += flux * (1.0f64).min(1.0 / (PI * along));
    }
    area.min(s / (2.0 * PI * n2))
}
