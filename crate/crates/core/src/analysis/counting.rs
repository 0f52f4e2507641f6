//! Counting curves `N(R) = #{λ : ||λ − x||_K ≤ R}` and error-exponent fits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::least_squares;
use crate::geometry::{ConvexBody, Domain};
use crate::pointsets::{PointSet, Window};

/// Default threshold below which `|E(R)|` is excluded from the log fit.
pub const DEFAULT_ETA: f64 = 0.5;
/// Minimum number of samples with `|E(R)| > eta`.
pub const MIN_FIT_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountSample {
    pub r: f64,
    pub n: u64,
    pub e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorFit {
    pub alpha_hat: f64,
    pub c_hat: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    /// Dyadic-block maxima entering the fit.
    pub points_used: usize,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingCurve {
    pub body: ConvexBody,
    pub body_volume: f64,
    pub domain_volume: f64,
    pub center: Vec<f64>,
    pub samples: Vec<CountSample>,
    pub fit: Option<ErrorFit>,
}

/// `N(R)` and `E(R) = N(R) − |K||Ω|R^d` at each radius; the window is enumerated once.
pub fn counting_curve(
    ps: &PointSet,
    dom: &Domain,
    body: &ConvexBody,
    radii: &[f64],
    center: &[f64],
) -> Result<CountingCurve> {
    let d = ps.dimension();
    if dom.dimension() != d || body.dimension() != d || center.len() != d {
        return Err(Error::InvalidArgument("point set, domain, body and center dimensions differ".into()));
    }
    if radii.is_empty() || radii.windows(2).any(|w| !(w[0] < w[1])) || !(radii[0] >= 0.0) {
        return Err(Error::InvalidArgument("radii must be a nonempty increasing list of nonnegative reals".into()));
    }
    let r_max = *radii.last().expect("nonempty");
    let window = Window::new(body.clone(), r_max, center.to_vec())?;
    let mut norms: Vec<f64> = ps.enumerate(&window)?.iter().map(|p| body.norm_from(p, center)).collect();
    norms.sort_by(f64::total_cmp);
    let kv = body.volume() * dom.volume();
    let samples = radii
        .iter()
        .map(|&r| {
            let n = norms.partition_point(|&x| x <= r) as u64;
            CountSample { r, n, e: n as f64 - kv * r.powi(d as i32) }
        })
        .collect();
    Ok(CountingCurve {
        body: body.clone(),
        body_volume: body.volume(),
        domain_volume: dom.volume(),
        center: center.to_vec(),
        samples,
        fit: None,
    })
}

/// Least-squares line through `(log R, log max|E|)` over dyadic blocks `[2^k, 2^{k+1})`.
pub fn fit_error_exponent(curve: &CountingCurve, eta: f64) -> Result<ErrorFit> {
    if !(eta >= 0.0) {
        return Err(Error::InvalidArgument(format!("eta must be nonnegative, got {eta}")));
    }
    let usable: Vec<&CountSample> = curve.samples.iter().filter(|s| s.r > 0.0 && s.e.abs() > eta).collect();
    if usable.len() < MIN_FIT_SAMPLES {
        return Err(Error::FitUnavailable(format!(
            "{} samples have |E| > {eta}; at least {MIN_FIT_SAMPLES} are needed",
            usable.len()
        )));
    }
    let mut blocks: Vec<(i32, f64, f64)> = Vec::new();
    for s in usable {
        let k = s.r.log2().floor() as i32;
        match blocks.last_mut() {
            Some(b) if b.0 == k => {
                if s.e.abs() > b.2 {
                    *b = (k, s.r, s.e.abs());
                }
            }
            _ => blocks.push((k, s.r, s.e.abs())),
        }
    }
    if blocks.len() < 2 {
        return Err(Error::FitUnavailable("samples span fewer than two dyadic blocks".into()));
    }
    let xs: Vec<f64> = blocks.iter().map(|b| b.1.ln()).collect();
    let ys: Vec<f64> = blocks.iter().map(|b| b.2.ln()).collect();
    let line = least_squares(&xs, &ys);
    Ok(ErrorFit {
        alpha_hat: line.slope,
        c_hat: line.intercept.exp(),
        residual: line.residual,
        points_used: blocks.len(),
        eta,
    })
}

/// `R,N,E` rows with 15 significant digits in positional notation.
pub fn curve_csv(curve: &CountingCurve) -> String {
    let mut out = String::from("R,N,E\n");
    for s in &curve.samples {
        writeln!(out, "{},{},{}", sig15(s.r), s.n, sig15(s.e)).expect("writing to a String cannot fail");
    }
    out
}

/// Rounds to 15 significant digits and prints without an exponent or trailing zeros.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { format!("{x}") };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (14 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" { "0".into() } else { s }
}
