//! Truncated tiling sums `Σ_λ f(x − λ)`, frame-bound estimates and the combined verdict.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::orthogonality::{check_orthogonality, OrthogonalityCheck, DEFAULT_ORTHOGONALITY_TOL};
use crate::error::{Error, Result};
use crate::fourier::{tail_certificate, PowerSpectrum, QmcOptions, TailCertificate};
use crate::geometry::{ConvexBody, Domain};
use crate::pointsets::{min_distance, PointSet, Window};
use crate::qmc::{pairwise_sum, Halton};

/// Default truncation radius for tiling sums.
pub const DEFAULT_TRUNCATION: f64 = 100.0;
/// Minimum number of frame-bound sample centers.
pub const MIN_FRAME_CENTERS: usize = 32;
/// Multiplier on the certificate when judging tiling residuals.
pub const CERTIFICATE_SAFETY: f64 = 1.0;
/// Largest accepted `B̂ / Â` for a frame verdict.
pub const MAX_FRAME_RATIO: f64 = 1e6;

/// `f`, the truncation body and radius, and the tail certificate, shared across centers.
#[derive(Debug, Clone)]
pub struct TilingSetup {
    spectrum: PowerSpectrum,
    body: ConvexBody,
    truncation: f64,
    tail: TailCertificate,
}

impl TilingSetup {
    pub fn new(dom: &Domain, body: ConvexBody, truncation: f64, qmc: &QmcOptions) -> Result<Self> {
        if body.dimension() != dom.dimension() {
            return Err(Error::InvalidArgument("body and domain dimensions differ".into()));
        }
        let spectrum = PowerSpectrum::new(dom.clone());
        let tail = tail_certificate(&spectrum, &body, truncation, qmc)?;
        Ok(Self { spectrum, body, truncation, tail })
    }

    /// Cube truncation window with the default sampling budget.
    pub fn cube(dom: &Domain, truncation: f64, seed: u64) -> Result<Self> {
        Self::new(dom, ConvexBody::unit_cube(dom.dimension()), truncation, &QmcOptions::with_seed(seed))
    }

    pub fn tail(&self) -> &TailCertificate {
        &self.tail
    }

    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    /// `Σ_{||λ − x||_K ≤ T} f(x − λ)` with its residual against `|Ω|²`.
    pub fn residual(&self, ps: &PointSet, x: &[f64]) -> Result<TilingSample> {
        let w = Window::new(self.body.clone(), self.truncation, x.to_vec())?;
        let pts = ps.enumerate(&w)?;
        let mut diff = vec![0.0; x.len()];
        let vals: Vec<f64> = pts
            .iter()
            .map(|p| {
                for ((o, a), b) in diff.iter_mut().zip(x).zip(p) {
                    *o = a - b;
                }
                self.spectrum.eval(&diff)
            })
            .collect();
        let sum = pairwise_sum(&vals);
        let vol = self.spectrum.domain().volume();
        let d = x.len() as i32;
        let density = pts.len() as f64 / (self.body.volume() * self.truncation.powi(d));
        Ok(TilingSample {
            x: x.to_vec(),
            sum,
            residual: (sum - vol * vol).abs(),
            count: pts.len(),
            certificate: density * self.tail.tail_bound,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingSample {
    pub x: Vec<f64>,
    pub sum: f64,
    pub residual: f64,
    /// Points inside the truncation window.
    pub count: usize,
    /// Density-scaled tail bound `ρ · tail_bound` with `ρ = count / (|K| T^d)`.
    pub certificate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingResidual {
    pub sample: TilingSample,
    pub tail: TailCertificate,
}

/// One-shot tiling residual with a cube truncation window and default sampling.
pub fn tiling_residual(ps: &PointSet, dom: &Domain, x: &[f64], truncation: f64) -> Result<TilingResidual> {
    let setup = TilingSetup::cube(dom, truncation, 0)?;
    let sample = setup.residual(ps, x)?;
    if sample.count == 0 {
        return Err(Error::InvalidArgument("truncation window holds no points".into()));
    }
    Ok(TilingResidual { sample, tail: setup.tail })
}

/// Where frame-bound sums are sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SampleCenters {
    /// Shifted Halton points in the fundamental cell of a periodic set.
    FundamentalCell { count: usize, seed: u64 },
    /// Seeded uniform points in a declared box.
    UniformBox { count: usize, seed: u64, bounds: Vec<[f64; 2]> },
    Explicit { centers: Vec<Vec<f64>> },
}

impl SampleCenters {
    /// Fundamental cell for periodic sets, the unit cube otherwise.
    pub fn auto(ps: &PointSet, count: usize, seed: u64) -> Self {
        if ps.is_periodic() {
            SampleCenters::FundamentalCell { count, seed }
        } else {
            SampleCenters::UniformBox { count, seed, bounds: vec![[0.0, 1.0]; ps.dimension()] }
        }
    }

    pub fn generate(&self, ps: &PointSet) -> Result<Vec<Vec<f64>>> {
        let d = ps.dimension();
        let out = match self {
            SampleCenters::FundamentalCell { count, seed } => {
                if !ps.is_periodic() {
                    return Err(Error::InvalidArgument("point set has no fundamental cell".into()));
                }
                let basis: Vec<Vec<f64>> = match ps {
                    PointSet::Lattice(l) => l.basis().to_vec(),
                    _ => (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect(),
                };
                let h = Halton::shifted(d, *seed);
                (0..*count as u64)
                    .map(|i| {
                        let u = h.point(i);
                        (0..d).map(|j| u.iter().zip(&basis).map(|(c, b)| c * b[j]).sum()).collect()
                    })
                    .collect()
            }
            SampleCenters::UniformBox { count, seed, bounds } => {
                if bounds.len() != d || bounds.iter().any(|b| !(b[1] > b[0])) {
                    return Err(Error::InvalidArgument("sample box must be nondegenerate and match dimension".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count).map(|_| bounds.iter().map(|b| rng.gen_range(b[0]..b[1])).collect()).collect()
            }
            SampleCenters::Explicit { centers } => {
                if centers.iter().any(|c| c.len() != d) {
                    return Err(Error::InvalidArgument("sample center dimension mismatch".into()));
                }
                centers.clone()
            }
        };
        Ok(out)
    }
}

/// Sampled frame bounds, normalized by `|Ω|²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub a_hat: f64,
    pub b_hat: f64,
    pub min_sum: f64,
    pub max_sum: f64,
    /// Largest density-scaled tail certificate over the centers.
    pub certificate: f64,
    pub centers: SampleCenters,
    pub center_count: usize,
    pub truncation: f64,
}

fn check_centers(n: usize) -> Result<()> {
    if n < MIN_FRAME_CENTERS {
        return Err(Error::InvalidArgument(format!("need at least {MIN_FRAME_CENTERS} sample centers, got {n}")));
    }
    Ok(())
}

/// Tiling sums at every sample center, in center order.
pub fn tiling_samples(setup: &TilingSetup, ps: &PointSet, centers: &[Vec<f64>]) -> Result<Vec<TilingSample>> {
    centers.par_iter().map(|x| setup.residual(ps, x)).collect()
}

fn bounds_from_samples(samples: &[TilingSample], vol: f64, centers: &SampleCenters, t: f64) -> FrameBounds {
    let v2 = vol * vol;
    let min_sum = samples.iter().map(|s| s.sum).fold(f64::INFINITY, f64::min);
    let max_sum = samples.iter().map(|s| s.sum).fold(f64::NEG_INFINITY, f64::max);
    let certificate = samples.iter().map(|s| s.certificate).fold(0.0, f64::max);
    FrameBounds {
        a_hat: ((min_sum - certificate) / v2).max(0.0),
        b_hat: (max_sum + certificate) / v2,
        min_sum,
        max_sum,
        certificate,
        centers: centers.clone(),
        center_count: samples.len(),
        truncation: t,
    }
}

pub fn estimate_frame_bounds(setup: &TilingSetup, ps: &PointSet, centers: &SampleCenters) -> Result<FrameBounds> {
    let cs = centers.generate(ps)?;
    check_centers(cs.len())?;
    let samples = tiling_samples(setup, ps, &cs)?;
    Ok(bounds_from_samples(&samples, setup.spectrum.domain().volume(), centers, setup.truncation))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    OrthogonalBasisConsistent,
    FrameConsistent,
    Inconsistent,
}

/// What the point set is claimed to be; decides which verdicts count as success.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    #[default]
    Basis,
    Frame,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub tol: f64,
    pub truncation: f64,
    /// Radius of the cube window used for orthogonality and separation.
    pub window: f64,
    pub centers: SampleCenters,
    pub qmc: QmcOptions,
    pub claim: Claim,
}

impl VerifyOptions {
    pub fn defaults_for(ps: &PointSet, seed: u64) -> Self {
        Self {
            tol: DEFAULT_ORTHOGONALITY_TOL,
            truncation: DEFAULT_TRUNCATION,
            window: default_window_radius(ps),
            centers: SampleCenters::auto(ps, 64, seed),
            qmc: QmcOptions::with_seed(seed),
            claim: Claim::Basis,
        }
    }
}

/// Cube radius expected to hold roughly a thousand points.
pub fn default_window_radius(ps: &PointSet) -> f64 {
    let d = ps.dimension();
    let probe = 4.0;
    let n = Window::centered(ConvexBody::unit_cube(d), probe)
        .and_then(|w| ps.count(&w))
        .unwrap_or(0)
        .max(1);
    let density = n as f64 / (2.0 * probe).powi(d as i32);
    (0.5 * (1000.0 / density).powf(1.0 / d as f64)).max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub orthogonality: OrthogonalityCheck,
    pub separation: Option<f64>,
    pub tiling_samples: Vec<TilingSample>,
    pub max_tiling_residual: f64,
    pub tail: TailCertificate,
    pub frame: FrameBounds,
    pub a_hat: f64,
    pub b_hat: f64,
    pub basis_consistent: bool,
    pub frame_consistent: bool,
    pub claim: Claim,
    pub verdict: Verdict,
    pub options: VerifyOptions,
}

/// Orthogonality, separation, tiling sums and frame bounds, combined into a verdict.
///
/// Basis-consistent: every pair is orthogonal within `tol` and every tiling residual lies
/// within its certificate. Frame-consistent: `Â` exceeds the certificate noise floor and
/// `B̂ / Â < 10^6`. A basis claim only accepts the first; a frame claim accepts either.
pub fn verify(ps: &PointSet, dom: &Domain, opts: &VerifyOptions) -> Result<VerificationReport> {
    let d = dom.dimension();
    if ps.dimension() != d {
        return Err(Error::InvalidArgument("domain and point set dimensions differ".into()));
    }
    let window = Window::centered(ConvexBody::unit_cube(d), opts.window)?;
    let orthogonality = check_orthogonality(ps, dom, &window, opts.tol)?;
    let separation = min_distance(&ps.enumerate(&window)?).ok();

    let setup = TilingSetup::new(dom, ConvexBody::unit_cube(d), opts.truncation, &opts.qmc)?;
    let cs = opts.centers.generate(ps)?;
    check_centers(cs.len())?;
    let samples = tiling_samples(&setup, ps, &cs)?;
    let vol = dom.volume();
    let frame = bounds_from_samples(&samples, vol, &opts.centers, opts.truncation);

    let max_tiling_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    let tiling_ok = samples.iter().all(|s| s.residual <= s.certificate * CERTIFICATE_SAFETY + opts.tol);
    let basis_consistent = orthogonality.passed && tiling_ok;
    let noise_floor = frame.certificate / (vol * vol);
    let frame_consistent = frame.a_hat > noise_floor && frame.b_hat / frame.a_hat < MAX_FRAME_RATIO;
    let verdict = match (opts.claim, basis_consistent, frame_consistent) {
        (_, true, _) => Verdict::OrthogonalBasisConsistent,
        (Claim::Frame, false, true) => Verdict::FrameConsistent,
        _ => Verdict::Inconsistent,
    };
    Ok(VerificationReport {
        orthogonality,
        separation,
        tiling_samples: samples,
        max_tiling_residual,
        tail: setup.tail,
        a_hat: frame.a_hat,
        b_hat: frame.b_hat,
        frame,
        basis_consistent,
        frame_consistent,
        claim: opts.claim,
        verdict,
        options: opts.clone(),
    })
}
