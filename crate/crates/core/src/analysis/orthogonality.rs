//! Pairwise orthogonality `f(λ − μ) = 0` over a window.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{CachePolicy, PowerSpectrum};
use crate::geometry::Domain;
use crate::pointsets::{PointSet, Window};

/// Default verdict threshold for `max f(λ − μ)`.
pub const DEFAULT_ORTHOGONALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityCheck {
    pub max_residual: f64,
    /// The pair attaining `max_residual` (first in index order on ties).
    pub worst_pair: Option<[Vec<f64>; 2]>,
    pub points: usize,
    pub pairs_tested: u64,
    pub tol: f64,
    pub passed: bool,
    /// Fewer than two points: the check holds vacuously.
    pub vacuous: bool,
}

/// Max of `f(λ − μ)` over all distinct pairs in the window.
pub fn check_orthogonality(ps: &PointSet, dom: &Domain, w: &Window, tol: f64) -> Result<OrthogonalityCheck> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if dom.dimension() != ps.dimension() {
        return Err(Error::InvalidArgument("domain and point set dimensions differ".into()));
    }
    let pts = ps.enumerate(w)?;
    let n = pts.len();
    if n < 2 {
        return Ok(OrthogonalityCheck {
            max_residual: 0.0,
            worst_pair: None,
            points: n,
            pairs_tested: 0,
            tol,
            passed: true,
            vacuous: true,
        });
    }
    // integer differences dominate for lattice-like sets; they hit the cache
    let spectrum = PowerSpectrum::with_cache(dom.clone(), CachePolicy::RationalGrid { denominator: 1 });
    let d = pts.dimension();
    let rows: Vec<(f64, usize)> = (0..n - 1)
        .into_par_iter()
        .map(|i| {
            let p = pts.get(i);
            let mut diff = vec![0.0; d];
            let mut best = (f64::NEG_INFINITY, i + 1);
            for j in i + 1..n {
                for ((o, a), b) in diff.iter_mut().zip(p).zip(pts.get(j)) {
                    *o = a - b;
                }
                let v = spectrum.eval(&diff);
                if v > best.0 {
                    best = (v, j);
                }
            }
            best
        })
        .collect();
    let (mut imax, mut best) = (0, rows[0]);
    for (i, r) in rows.iter().enumerate().skip(1) {
        if r.0 > best.0 {
            imax = i;
            best = *r;
        }
    }
    Ok(OrthogonalityCheck {
        max_residual: best.0,
        worst_pair: Some([pts.get(imax).to_vec(), pts.get(best.1).to_vec()]),
        points: n,
        pairs_tested: (n as u64) * (n as u64 - 1) / 2,
        tol,
        passed: best.0 <= tol,
        vacuous: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexBody;
    use std::f64::consts::PI;

    #[test]
    fn integer_lattice_is_orthogonal() {
        let w = Window::centered(ConvexBody::unit_cube(2), 15.0).unwrap();
        let r = check_orthogonality(&PointSet::integer_lattice(2), &Domain::unit_cube(2), &w, 1e-9).unwrap();
        assert!(r.points >= 900 && r.max_residual <= 1e-18 && r.passed);
    }

    #[test]
    fn compressed_lattice_fails_at_nearest_pair() {
        let ps = PointSet::scaled_lattice(1, 0.9).unwrap();
        let w = Window::centered(ConvexBody::unit_cube(1), 10.0).unwrap();
        let r = check_orthogonality(&ps, &Domain::unit_cube(1), &w, 1e-9).unwrap();
        let t = 0.9 * PI;
        let expect = (t.sin() / t).powi(2);
        assert!((r.max_residual - expect).abs() < 1e-15);
        assert!(!r.passed);
        let [a, b] = r.worst_pair.unwrap();
        assert!(((a[0] - b[0]).abs() - 0.9).abs() < 1e-12);
    }

    #[test]
    fn single_point_is_vacuous() {
        let w = Window::centered(ConvexBody::unit_cube(1), 0.1).unwrap();
        let r = check_orthogonality(&PointSet::integer_lattice(1), &Domain::unit_cube(1), &w, 1e-9).unwrap();
        assert!(r.vacuous && r.passed);
    }
}
