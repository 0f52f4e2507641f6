//! Command-line configuration and input loading.

use std::path::Path;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{Claim, DEFAULT_ETA, DEFAULT_ORTHOGONALITY_TOL};
use crate::error::{Error, Result};
use crate::fourier::shell::{DEFAULT_REPLICATES, DEFAULT_SAMPLES};
use crate::geometry::{AxisBox, ConvexBody, Domain};
use crate::pointsets::{parse_generator, parse_point_list, GeneratorSpec, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Orthogonality, tiling sums and frame bounds with a verdict.
    Verify,
    /// Counting curve as CSV plus the error-exponent fit.
    Count,
    /// Sampled Landau densities.
    Density,
    /// Largest empty cube and its two upper bounds.
    EmptyCube,
    /// Materialize the Example-1 spectrum inside a window.
    Example1,
    /// Volume, boundary and inscribed-cube data of a domain.
    DomainInfo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimArg {
    Basis,
    Frame,
}

impl From<ClaimArg> for Claim {
    fn from(c: ClaimArg) -> Self {
        match c {
            ClaimArg::Basis => Claim::Basis,
            ClaimArg::Frame => Claim::Frame,
        }
    }
}

/// Every knob of a run. Serialized verbatim into each report.
#[derive(Debug, Clone, PartialEq, Parser, Serialize, Deserialize)]
#[command(name = "spectral-weyl", version, about = "Fourier spectra and frames of bounded domains", allow_negative_numbers = true)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Domain JSON file.
    #[arg(long)]
    pub domain: Option<String>,
    /// Convex body JSON file (Euclidean unit ball when omitted).
    #[arg(long)]
    pub body: Option<String>,
    /// Point list file, one point per line.
    #[arg(long, conflicts_with = "generator")]
    pub points: Option<String>,
    /// Generator JSON file.
    #[arg(long)]
    pub generator: Option<String>,
    /// Radii as `start:stop:step` or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    pub radii: Option<String>,
    #[arg(long, default_value_t = DEFAULT_ORTHOGONALITY_TOL)]
    pub tol: f64,
    /// Truncation radius of tiling sums.
    #[arg(long, default_value_t = 100.0)]
    pub trunc: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub delta: f64,
    #[arg(long, default_value_t = DEFAULT_ETA)]
    pub eta: f64,
    /// Low-discrepancy samples per replicate.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<String>,
    /// Which verdict counts as success for `verify`.
    #[arg(long, value_enum, default_value_t = ClaimArg::Basis)]
    pub claim: ClaimArg,
    /// Cube radius of the orthogonality window (sized for about 10^3 points when omitted).
    #[arg(long)]
    pub window: Option<f64>,
    /// Frame-bound sample centers.
    #[arg(long, default_value_t = 64)]
    pub centers: usize,
    /// Dimension for `example1`.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Box as `lo:hi` per axis, comma separated; a single interval is repeated.
    #[arg(long, allow_hyphen_values = true)]
    pub search_box: Option<String>,
    /// Center grid spacing for `density`.
    #[arg(long, default_value_t = 0.1)]
    pub spacing: f64,
    /// Comma-separated center for `count`.
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    /// Boundary dimension for `empty-cube` (defaults to d - 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Lower frame bound for `empty-cube` (estimated when omitted).
    #[arg(long)]
    pub frame_a: Option<f64>,
    /// Upper frame bound for `empty-cube` (estimated when omitted).
    #[arg(long)]
    pub frame_b: Option<f64>,
    /// Emit the built-in polygon corpus table from `empty-cube`.
    #[arg(long)]
    pub corpus: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [("tol", self.tol), ("trunc", self.trunc), ("delta", self.delta), ("spacing", self.spacing)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("--{name} must be positive, got {v}")));
            }
        }
        if !(self.eta >= 0.0) {
            return Err(Error::InvalidArgument(format!("--eta must be nonnegative, got {}", self.eta)));
        }
        if self.samples == 0 || self.replicates < 2 {
            return Err(Error::InvalidArgument("--samples must be positive and --replicates at least 2".into()));
        }
        if let Some(w) = self.window {
            if !(w > 0.0) {
                return Err(Error::InvalidArgument(format!("--window must be positive, got {w}")));
            }
        }
        Ok(())
    }
}

/// `start:stop:step` (inclusive) or `r1,r2,...`; the empty string is the empty list.
pub fn parse_radii(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let num = |s: &str| -> Result<f64> {
        s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("cannot parse {s:?} in radii spec")))
    };
    let radii = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("radii range {spec:?} should be start:stop:step")));
        }
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || !(stop >= start) {
            return Err(Error::InvalidArgument(format!("radii range {spec:?} needs step > 0 and stop >= start")));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=n).map(|k| start + k as f64 * step).collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<f64>>>()?
    };
    if radii.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("radii must be strictly increasing".into()));
    }
    if radii.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(Error::InvalidArgument("radii must be finite and nonnegative".into()));
    }
    Ok(radii)
}

pub fn parse_vector(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("cannot parse {s:?} as a number"))))
        .collect()
}

/// `lo:hi[,lo:hi...]`; a single interval is repeated `dim` times.
pub fn parse_box(spec: &str, dim: usize) -> Result<AxisBox> {
    let mut intervals = spec
        .split(',')
        .map(|iv| {
            let v: Vec<&str> = iv.split(':').collect();
            if v.len() != 2 {
                return Err(Error::Parse(format!("interval {iv:?} should be lo:hi")));
            }
            let lo = v[0].trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad bound in {iv:?}")))?;
            let hi = v[1].trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad bound in {iv:?}")))?;
            Ok([lo, hi])
        })
        .collect::<Result<Vec<[f64; 2]>>>()?;
    if intervals.len() == 1 && dim > 1 {
        intervals = vec![intervals[0]; dim];
    }
    if intervals.len() != dim {
        return Err(Error::InvalidArgument(format!("box has {} intervals, expected {dim}", intervals.len())));
    }
    AxisBox::new(intervals).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path))
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{path}: {e}"))))
}

pub fn load_domain(path: &str) -> Result<Domain> {
    Ok(serde_json::from_str(&read(path)?)?)
}

pub fn load_body(path: &str) -> Result<ConvexBody> {
    Ok(serde_json::from_str(&read(path)?)?)
}

/// The point set named by `--points` or `--generator`.
pub fn load_point_set(cfg: &RunConfig, dim: Option<usize>) -> Result<PointSet> {
    match (&cfg.points, &cfg.generator) {
        (Some(p), None) => parse_point_list(&read(p)?, dim).map(PointSet::Explicit),
        (None, Some(g)) => parse_generator(&read(g)?),
        _ => Err(Error::InvalidArgument("exactly one of --points or --generator is required".into())),
    }
}

/// Inline description of the loaded inputs, so a report carries what it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<Domain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<ConvexBody>,
    /// Generator description; explicit lists are summarized by their size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explicit_points: Option<usize>,
}

impl InputSummary {
    pub fn new(domain: Option<&Domain>, body: Option<&ConvexBody>, ps: Option<&PointSet>) -> Self {
        let (generator, explicit_points) = match ps {
            Some(PointSet::Explicit(p)) => (None, Some(p.len())),
            Some(ps) => (Some(GeneratorSpec::from_point_set(ps)), None),
            None => (None, None),
        };
        Self { domain: domain.cloned(), body: body.cloned(), generator, explicit_points }
    }
}
