//! Shell integrals `∫_{K_{2R} \ K_R} f` and certified tail bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spectrum::PowerSpectrum;
use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::qmc::{mean_and_standard_error, pairwise_sum, Halton};

/// Default low-discrepancy samples per replicate.
pub const DEFAULT_SAMPLES: usize = 1 << 16;
/// Default number of independently rotated replicates.
pub const DEFAULT_REPLICATES: usize = 8;
/// Shells contributing less than this end the tail sum.
pub const SHELL_CUTOFF: f64 = 1e-15;
/// Shells summed explicitly before the fitted remainder takes over.
pub const MAX_SHELLS: usize = 7;

const BLOCK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QmcOptions {
    pub samples: usize,
    pub replicates: usize,
    pub seed: u64,
}

impl Default for QmcOptions {
    fn default() -> Self {
        Self { samples: DEFAULT_SAMPLES, replicates: DEFAULT_REPLICATES, seed: 0 }
    }
}

impl QmcOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 || self.replicates < 2 {
            return Err(Error::InvalidArgument("QMC needs samples > 0 and at least 2 replicates".into()));
        }
        Ok(())
    }
}

/// Which function a shell estimate integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrand {
    PowerSpectrum,
    Envelope,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellEstimate {
    pub radius: f64,
    pub estimate: f64,
    pub standard_error: f64,
    /// Every sampled value underflowed to zero.
    pub underflow: bool,
}

/// Quasi-Monte Carlo estimate of `∫_{K_{2R} \ K_R} f`.
pub fn shell_integral(ps: &PowerSpectrum, body: &ConvexBody, r: f64, opts: &QmcOptions) -> Result<ShellEstimate> {
    shell_integral_of(ps, Integrand::PowerSpectrum, body, r, opts)
}

pub fn shell_integral_of(
    ps: &PowerSpectrum,
    integrand: Integrand,
    body: &ConvexBody,
    r: f64,
    opts: &QmcOptions,
) -> Result<ShellEstimate> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("shell radius must be positive, got {r}")));
    }
    let g = |x: &[f64]| match integrand {
        Integrand::PowerSpectrum => ps.eval(x),
        Integrand::Envelope => ps.envelope(x),
    };
    let (estimate, standard_error, underflow) =
        region_integral(ps.dimension(), body, 2.0 * r, |n| n > r && n <= 2.0 * r, g, opts)?;
    Ok(ShellEstimate { radius: r, estimate, standard_error, underflow })
}

/// Estimate of `∫_{K_T} f`; approaches `|Ω|` as `T` grows.
pub fn body_integral(ps: &PowerSpectrum, body: &ConvexBody, t: f64, opts: &QmcOptions) -> Result<(f64, f64)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {t}")));
    }
    let (e, se, _) = region_integral(ps.dimension(), body, t, |n| n <= t, |x| ps.eval(x), opts)?;
    Ok((e, se))
}

/// Rejection sampling from the bounding box of `K_outer`; replicates use independent rotations.
fn region_integral<F, M>(
    dim: usize,
    body: &ConvexBody,
    outer: f64,
    member: M,
    g: F,
    opts: &QmcOptions,
) -> Result<(f64, f64, bool)>
where
    F: Fn(&[f64]) -> f64 + Sync,
    M: Fn(f64) -> bool + Sync,
{
    opts.validate()?;
    if body.dimension() != dim {
        return Err(Error::InvalidArgument("body and domain dimensions differ".into()));
    }
    let half: Vec<f64> = body.half_widths().iter().map(|w| w * outer).collect();
    let box_volume: f64 = half.iter().map(|w| 2.0 * w).product();
    let mut estimates = Vec::with_capacity(opts.replicates);
    let mut any_positive = false;
    for rep in 0..opts.replicates {
        let seq = Halton::shifted(dim, replicate_seed(opts.seed, rep as u64));
        let blocks: Vec<(f64, bool)> = (0..opts.samples.div_ceil(BLOCK))
            .into_par_iter()
            .map(|blk| {
                let start = blk * BLOCK;
                let end = (start + BLOCK).min(opts.samples);
                let mut u = vec![0.0; dim];
                let mut vals = Vec::with_capacity(end - start);
                let mut pos = false;
                for i in start..end {
                    seq.fill(i as u64, &mut u);
                    for (c, w) in u.iter_mut().zip(&half) {
                        *c = (2.0 * *c - 1.0) * w;
                    }
                    if member(body.norm(&u)) {
                        let v = g(&u);
                        pos |= v > 0.0;
                        vals.push(v);
                    }
                }
                (pairwise_sum(&vals), pos)
            })
            .collect();
        any_positive |= blocks.iter().any(|b| b.1);
        let sums: Vec<f64> = blocks.iter().map(|b| b.0).collect();
        estimates.push(box_volume * pairwise_sum(&sums) / opts.samples as f64);
    }
    if !any_positive {
        return Ok((0.0, 0.0, true));
    }
    let (mean, se) = mean_and_standard_error(&estimates);
    Ok((mean, se, false))
}

fn replicate_seed(seed: u64, rep: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(rep.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailMethod {
    /// Shells fell below the cutoff; no extrapolation was needed.
    ShellSum,
    /// The last shells were extrapolated with a fitted power-law decay.
    FittedDecay,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellRecord {
    pub radius: f64,
    pub estimate: f64,
    pub standard_error: f64,
    /// `estimate + 2 · standard_error`, the value that is summed.
    pub upper: f64,
}

/// Upper estimate of `∫_{K_T^c} g` for the majorant `g ≥ f` of [`PowerSpectrum::envelope`].
///
/// Integrating the majorant rather than `f` keeps the bound valid for sums of `f` over
/// shifted discrete sets, where the oscillation of `f` does not average out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailCertificate {
    pub truncation: f64,
    pub tail_bound: f64,
    pub method: TailMethod,
    pub integrand: Integrand,
    pub shells: Vec<ShellRecord>,
    pub fitted_slope: Option<f64>,
    pub slope_standard_error: Option<f64>,
    pub remainder: f64,
    pub qmc: QmcOptions,
    pub body: ConvexBody,
}

pub fn tail_certificate(ps: &PowerSpectrum, body: &ConvexBody, t: f64, opts: &QmcOptions) -> Result<TailCertificate> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("truncation radius must be at least 1, got {t}")));
    }
    let mut shells = Vec::new();
    let mut truncated = false;
    for j in 0..MAX_SHELLS {
        let r = t * 2f64.powi(j as i32);
        let s = shell_integral_of(ps, Integrand::Envelope, body, r, opts)?;
        let upper = s.estimate + 2.0 * s.standard_error;
        shells.push(ShellRecord { radius: r, estimate: s.estimate, standard_error: s.standard_error, upper });
        if upper < SHELL_CUTOFF {
            truncated = true;
            break;
        }
    }
    let summed: f64 = shells.iter().map(|s| s.upper).sum();
    let base = TailCertificate {
        truncation: t,
        tail_bound: summed,
        method: TailMethod::ShellSum,
        integrand: Integrand::Envelope,
        shells,
        fitted_slope: None,
        slope_standard_error: None,
        remainder: 0.0,
        qmc: *opts,
        body: body.clone(),
    };
    if truncated {
        return Ok(base);
    }
    let xs: Vec<f64> = base.shells.iter().map(|s| s.radius.ln()).collect();
    let ys: Vec<f64> = base.shells.iter().map(|s| s.upper.ln()).collect();
    let fit = least_squares(&xs, &ys);
    let conservative = fit.slope + fit.slope_se;
    if !(conservative < 0.0) {
        return Err(Error::CertificateUnavailable(format!(
            "shell masses do not decay (fitted slope {:.3} ± {:.3})",
            fit.slope, fit.slope_se
        )));
    }
    let ratio = 2f64.powf(conservative);
    let last = base.shells.last().map_or(0.0, |s| s.upper);
    let remainder = last * ratio / (1.0 - ratio);
    Ok(TailCertificate {
        tail_bound: summed + remainder,
        method: TailMethod::FittedDecay,
        fitted_slope: Some(fit.slope),
        slope_standard_error: Some(fit.slope_se),
        remainder,
        ..base
    })
}

/// Ordinary least squares line with the standard error of the slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

pub fn least_squares(xs: &[f64], ys: &[f64]) -> LineFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let slope_se = if xs.len() > 2 { (sse / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    LineFit { slope, intercept, slope_se, residual: (sse / n).sqrt() }
}
