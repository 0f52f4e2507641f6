//! Independent oracles shared by the integration tests.
#![allow(dead_code, clippy::excessive_precision)]

use num_complex::Complex64;
use spectral_weyl::geometry::Domain;
use std::f64::consts::PI;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let pair = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        kronrod += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).norm())
}

fn adapt<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
    let (k, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return k;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss-Kronrod (7/15) quadrature of a complex integrand.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    adapt(&f, a, b, tol, 40)
}

pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    integrate(|x| Complex64::new(f(x), 0.0), a, b, tol).re
}

fn phase(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * t)
}

/// Vertical slice of a simple polygon at `x`, as sorted `[y0, y1]` intervals.
fn slice(vertices: &[[f64; 2]], x: f64) -> Vec<[f64; 2]> {
    let n = vertices.len();
    let mut ys: Vec<f64> = (0..n)
        .filter_map(|i| {
            let (p, q) = (vertices[i], vertices[(i + 1) % n]);
            let crosses = (p[0] <= x && x < q[0]) || (q[0] <= x && x < p[0]);
            crosses.then(|| p[1] + (x - p[0]) * (q[1] - p[1]) / (q[0] - p[0]))
        })
        .collect();
    ys.sort_by(f64::total_cmp);
    ys.chunks(2).map(|c| [c[0], c[1]]).collect()
}

/// `∫_Ω e^{-2πi ξ·x} dx` by quadrature: per-axis for boxes, nested for polygons.
pub fn ft_oracle(dom: &Domain, xi: &[f64]) -> Complex64 {
    let tol = 1e-13;
    match dom {
        Domain::Polygon(p) => {
            let v = p.vertices();
            let mut xs: Vec<f64> = v.iter().map(|q| q[0]).collect();
            xs.sort_by(f64::total_cmp);
            xs.dedup();
            let inner = |x: f64| {
                slice(v, x)
                    .into_iter()
                    .map(|[y0, y1]| integrate(|y| phase(xi[1] * y), y0, y1, tol))
                    .sum::<Complex64>()
                    * phase(xi[0] * x)
            };
            xs.windows(2).map(|w| integrate(inner, w[0], w[1], tol)).sum()
        }
        _ => dom
            .boxes()
            .iter()
            .map(|b| {
                b.intervals()
                    .iter()
                    .zip(xi)
                    .map(|(&[lo, hi], &x)| integrate(|t| phase(x * t), lo, hi, tol))
                    .product::<Complex64>()
            })
            .sum(),
    }
}

/// `(sin πx / πx)²`.
pub fn sinc2(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let s = (PI * x).sin() / (PI * x);
        s * s
    }
}

pub fn l_shape() -> Domain {
    Domain::polygon(vec![[0., 0.], [2., 0.], [2., 1.], [1., 1.], [1., 2.], [0., 2.]]).unwrap()
}

pub fn gap_lattice() -> spectral_weyl::pointsets::PointSet {
    use spectral_weyl::pointsets::{PointSet, Points};
    let rows: Vec<Vec<f64>> = (-1..=11)
        .flat_map(|i| (-1..=11).map(move |j| vec![i as f64, j as f64]))
        .filter(|p| !((4.0..=5.0).contains(&p[0]) && (4.0..=5.0).contains(&p[1])))
        .collect();
    PointSet::explicit(Points::from_rows(2, &rows).unwrap())
}
