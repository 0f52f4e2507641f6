//! Closed forms of `χ̂_Ω(ξ) = ∫_Ω e^{-2πi x·ξ} dx`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::geometry::{AxisBox, Domain, Polygon};

/// Below this the removable singularity is evaluated as its limit.
pub const EXACT_LIMIT: f64 = 1e-14;
/// Below this (and above [`EXACT_LIMIT`]) a two-term series replaces `sin(πt)/(πt)`.
pub const SERIES_LIMIT: f64 = 1e-8;

/// `sin(πt)` with exact zeros at the integers.
pub fn sin_pi(t: f64) -> f64 {
    let n = t.round();
    let f = t - n;
    if f == 0.0 {
        return 0.0;
    }
    let s = (PI * f).sin();
    if n.rem_euclid(2.0) == 0.0 { s } else { -s }
}

/// `cos(πt)` with exact zeros at the half-integers.
pub fn cos_pi(t: f64) -> f64 {
    let n = t.round();
    let f = t - n;
    let c = if f.abs() == 0.5 { 0.0 } else { (PI * f).cos() };
    if n.rem_euclid(2.0) == 0.0 { c } else { -c }
}

/// `sin(πt) / (πt)`, equal to 1 at the origin.
pub fn sinc(t: f64) -> f64 {
    if t == 0.0 { 1.0 } else { sin_pi(t) / (PI * t) }
}

/// `e^{-πi t}`.
fn phase(t: f64) -> Complex64 {
    Complex64::new(cos_pi(t), -sin_pi(t))
}

/// One-dimensional factor `∫_a^b e^{-2πi x ξ} dx`.
pub fn interval_factor(a: f64, b: f64, xi: f64) -> Complex64 {
    let len = b - a;
    if xi.abs() < EXACT_LIMIT {
        return Complex64::new(len, 0.0);
    }
    let s = if xi.abs() < SERIES_LIMIT {
        let t = PI * len * xi;
        1.0 - t * t / 6.0
    } else {
        sinc(len * xi)
    };
    phase((a + b) * xi) * (len * s)
}

fn box_ft(b: &AxisBox, xi: &[f64]) -> Complex64 {
    b.intervals().iter().zip(xi).map(|(iv, &x)| interval_factor(iv[0], iv[1], x)).product()
}

/// Fourier transform of `χ_Ω` at `ξ`.
///
/// # Panics
/// If `xi` does not have the domain's dimension.
pub fn ft_indicator(domain: &Domain, xi: &[f64]) -> Complex64 {
    assert_eq!(xi.len(), domain.dimension(), "frequency dimension mismatch");
    match domain {
        Domain::Box(b) => box_ft(b, xi),
        Domain::BoxUnion(bs) => bs.iter().map(|b| box_ft(b, xi)).sum(),
        Domain::Polygon(p) => polygon_ft(p, [xi[0], xi[1]]),
    }
}

/// Polygons are expanded about the bounding-box center `c`, so `χ̂(ξ) = e^{-2πi c·ξ} g(ξ)`.
/// For `2π|ξ| D ≤ 1` (`D` the largest vertex distance from `c`) `g` is the Taylor series of
/// the exponential integrated exactly over a triangle fan; otherwise the divergence theorem
/// turns it into a sum over edges.
fn polygon_ft(poly: &Polygon, xi: [f64; 2]) -> Complex64 {
    let area = poly.area();
    let n2 = xi[0] * xi[0] + xi[1] * xi[1];
    if n2.sqrt() < EXACT_LIMIT {
        return Complex64::new(area, 0.0);
    }
    let c = poly.bounding_box().center();
    let rel: Vec<[f64; 2]> = poly.vertices().iter().map(|v| [v[0] - c[0], v[1] - c[1]]).collect();
    let reach = rel.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    let z = 2.0 * PI * n2.sqrt() * reach;
    let local = if z <= 1.0 { polygon_series(&rel, xi) } else { polygon_edges(&rel, xi, n2) };
    local * phase(2.0 * (c[0] * xi[0] + c[1] * xi[1]))
}

/// `Σ_k (-2πi)^k / k! ∫ (x·ξ)^k`, using `∫_T (x·ξ)^k = 2|T| k!/(k+2)! h_k(b, c)` on the
/// triangle `(0, p, q)` with `b = p·ξ`, `c = q·ξ`, `h_k` the complete homogeneous polynomial.
fn polygon_series(rel: &[[f64; 2]], xi: [f64; 2]) -> Complex64 {
    let n = rel.len();
    let mut tris: Vec<(f64, f64, f64, f64, f64)> = (0..n)
        .map(|i| {
            let p = rel[i];
            let q = rel[(i + 1) % n];
            let a = 0.5 * (p[0] * q[1] - p[1] * q[0]);
            let b = p[0] * xi[0] + p[1] * xi[1];
            let c = q[0] * xi[0] + q[1] * xi[1];
            // (signed area, b, c, h_k, b^k)
            (a, b, c, 1.0, 1.0)
        })
        .collect();
    let reach = tris.iter().map(|t| t.1.abs().max(t.2.abs())).fold(0.0, f64::max);
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut total = Complex64::new(tris.iter().map(|t| t.0).sum(), 0.0);
    // |h_k| <= (k+1) reach^k bounds every later term, so stop once that bound is negligible
    let mut bound = 1.0;
    for k in 1..=60 {
        coeff *= Complex64::new(0.0, -2.0 * PI) / (k as f64 + 2.0);
        let mut s = 0.0;
        for t in tris.iter_mut() {
            t.4 *= t.1;
            t.3 = t.2 * t.3 + t.4;
            s += t.0 * t.3;
        }
        total += coeff * s;
        bound *= 2.0 * PI * reach / (k as f64 + 2.0);
        if bound * (k as f64 + 1.0) < 1e-18 {
            break;
        }
    }
    total
}

/// `Σ_e (ξ_x Δy − ξ_y Δx) e^{-πi (p+q)·ξ} sinc(Δ·ξ) / (−2πi |ξ|²)` over directed edges `p → q`.
fn polygon_edges(rel: &[[f64; 2]], xi: [f64; 2], n2: f64) -> Complex64 {
    let n = rel.len();
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let p = rel[i];
        let q = rel[(i + 1) % n];
        let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
        let flux = xi[0] * dy - xi[1] * dx;
        if flux == 0.0 {
            continue;
        }
        let mid = (p[0] + q[0]) * xi[0] + (p[1] + q[1]) * xi[1];
        sum += phase(mid) * (flux * sinc(dx * xi[0] + dy * xi[1]));
    }
    sum * Complex64::new(0.0, 1.0 / (2.0 * PI * n2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_helpers_hit_exact_zeros() {
        for n in -5..=5 {
            assert_eq!(sin_pi(n as f64), 0.0);
            assert_eq!(cos_pi(n as f64 + 0.5), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(1.5) + 1.0).abs() < 1e-16);
        assert!((cos_pi(1.0) + 1.0).abs() < 1e-16);
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn unit_interval_at_half() {
        let d = Domain::unit_cube(1);
        let v = ft_indicator(&d, &[0.5]);
        assert!((v.norm() - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn origin_gives_volume() {
        let u = Domain::box_union(vec![
            AxisBox::new(vec![[0., 1.], [0., 1.]]).unwrap(),
            AxisBox::new(vec![[2., 3.], [0., 2.]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(ft_indicator(&u, &[0.0, 0.0]), Complex64::new(3.0, 0.0));
        let l = Domain::polygon(vec![[0., 0.], [2., 0.], [2., 1.], [1., 1.], [1., 2.], [0., 2.]]).unwrap();
        assert_eq!(ft_indicator(&l, &[0.0, 0.0]), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn integer_frequencies_vanish_on_unit_cube() {
        let d = Domain::unit_cube(3);
        for xi in [[1.0, 0.0, 0.0], [0.0, -2.0, 0.3], [7.0, 7.0, 7.0]] {
            assert!(ft_indicator(&d, &xi).norm() <= 1e-14);
        }
    }

    #[test]
    fn polygon_square_matches_box_across_branch() {
        let sq = Domain::polygon(vec![[0., 0.], [1., 0.], [1., 1.], [0., 1.]]).unwrap();
        let bx = Domain::unit_cube(2);
        for xi in [[0.01, 0.02], [0.2, -0.1], [0.224, 0.0], [0.226, 0.0], [1.3, 2.7], [0.0, 3.5], [1e-9, 0.0]] {
            let a = ft_indicator(&sq, &xi);
            let b = ft_indicator(&bx, &xi);
            assert!((a - b).norm() < 1e-13, "{xi:?}: {a} vs {b}");
        }
    }

    #[test]
    fn continuity_across_interval_branches() {
        for limit in [EXACT_LIMIT, SERIES_LIMIT] {
            for sign in [1.0, -1.0] {
                let below = interval_factor(0.3, 1.7, sign * limit * (1.0 - 1e-9));
                let above = interval_factor(0.3, 1.7, sign * limit * (1.0 + 1e-9));
                assert!((below - above).norm() < 1e-10, "{limit}");
            }
        }
    }
}
