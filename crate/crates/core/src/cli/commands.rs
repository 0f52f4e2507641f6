//! One handler per subcommand. Each returns the files to write and the exit status.

use serde::Serialize;

use super::config::{
    load_body, load_domain, load_point_set, parse_box, parse_radii, parse_vector, Command, InputSummary, RunConfig,
};
use crate::analysis::{
    check_empty_cube_bounds, corpus_table, counting_curve, curve_csv, default_corpus, estimate_frame_bounds,
    feature_scales, fit_error_exponent, largest_empty_cube, verify, SampleCenters, TilingSetup, Verdict,
    VerifyOptions,
};
use crate::error::{Error, Result};
use crate::fourier::QmcOptions;
use crate::geometry::{
    inscribed_cube_side, minkowski_content_estimate, polygon_isoperimetric_check, AxisBox, ConvexBody, Domain,
    DomainKind, IsoperimetricRecord, MinkowskiEstimate,
};
use crate::pointsets::{format_point_list, landau_density, CenterSpec, LandauDensity, Window};

/// JSON envelope shared by every report.
#[derive(Debug, Serialize)]
pub struct Report<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub seed: u64,
    pub config: &'a RunConfig,
    pub inputs: InputSummary,
    pub result: T,
}

/// Where a piece of output goes; `None` is standard output.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub path: Option<String>,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub warnings: Vec<String>,
    /// Set when the verdict does not support the claim.
    pub verdict_failed: bool,
}

fn report<T: Serialize>(cfg: &RunConfig, inputs: InputSummary, result: T) -> Result<String> {
    let r = Report {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: cfg.command,
        seed: cfg.seed,
        config: cfg,
        inputs,
        result,
    };
    Ok(serde_json::to_string_pretty(&r)? + "\n")
}

fn single(cfg: &RunConfig, contents: String) -> Outcome {
    Outcome { artifacts: vec![Artifact { path: cfg.out.clone(), contents }], ..Default::default() }
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required for this command")))
}

fn body_or_ball(cfg: &RunConfig, dim: usize) -> Result<ConvexBody> {
    match &cfg.body {
        Some(p) => {
            let b = load_body(p)?;
            if b.dimension() != dim {
                return Err(Error::InvalidBody(format!("body has dimension {}, expected {dim}", b.dimension())));
            }
            Ok(b)
        }
        None => Ok(ConvexBody::unit_ball(dim)),
    }
}

fn qmc(cfg: &RunConfig) -> QmcOptions {
    QmcOptions { samples: cfg.samples, replicates: cfg.replicates, seed: cfg.seed }
}

pub fn dispatch(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.command {
        Command::Verify => cmd_verify(cfg),
        Command::Count => cmd_count(cfg),
        Command::Density => cmd_density(cfg),
        Command::EmptyCube => cmd_empty_cube(cfg),
        Command::Example1 => cmd_example1(cfg),
        Command::DomainInfo => cmd_domain_info(cfg),
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let dom = load_domain(require(&cfg.domain, "domain")?)?;
    let ps = load_point_set(cfg, Some(dom.dimension()))?;
    let mut opts = VerifyOptions::defaults_for(&ps, cfg.seed);
    opts.tol = cfg.tol;
    opts.truncation = cfg.trunc;
    opts.qmc = qmc(cfg);
    opts.claim = cfg.claim.into();
    opts.centers = SampleCenters::auto(&ps, cfg.centers, cfg.seed);
    if let Some(w) = cfg.window {
        opts.window = w;
    }
    let result = verify(&ps, &dom, &opts)?;
    let failed = result.verdict == Verdict::Inconsistent;
    let mut out = single(cfg, report(cfg, InputSummary::new(Some(&dom), None, Some(&ps)), result)?);
    out.verdict_failed = failed;
    Ok(out)
}

/// Fit file written next to the CSV: `curve.csv` becomes `curve.fit.json`.
pub fn fit_path(csv: &str) -> String {
    match csv.strip_suffix(".csv") {
        Some(stem) => format!("{stem}.fit.json"),
        None => format!("{csv}.fit.json"),
    }
}

#[derive(Debug, Serialize)]
struct CountResult {
    body_volume: f64,
    domain_volume: f64,
    center: Vec<f64>,
    samples: usize,
    fit: Option<crate::analysis::ErrorFit>,
    fit_error: Option<String>,
}

pub fn cmd_count(cfg: &RunConfig) -> Result<Outcome> {
    let dom = load_domain(require(&cfg.domain, "domain")?)?;
    let d = dom.dimension();
    let ps = load_point_set(cfg, Some(d))?;
    let body = body_or_ball(cfg, d)?;
    let radii = parse_radii(require(&cfg.radii, "radii")?)?;
    if radii.is_empty() {
        return Err(Error::InvalidArgument("radii spec is empty".into()));
    }
    let center = match &cfg.center {
        Some(c) => parse_vector(c)?,
        None => vec![0.0; d],
    };
    let mut curve = counting_curve(&ps, &dom, &body, &radii, &center)?;
    let mut warnings = Vec::new();
    let (fit, fit_error) = match fit_error_exponent(&curve, cfg.eta) {
        Ok(f) => (Some(f), None),
        Err(e @ Error::FitUnavailable(_)) => {
            warnings.push(e.to_string());
            (None, Some(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    curve.fit = fit;
    let result = CountResult {
        body_volume: curve.body_volume,
        domain_volume: curve.domain_volume,
        center,
        samples: curve.samples.len(),
        fit,
        fit_error,
    };
    let json = report(cfg, InputSummary::new(Some(&dom), Some(&body), Some(&ps)), result)?;
    let csv = curve_csv(&curve);
    let artifacts = match &cfg.out {
        Some(p) => vec![
            Artifact { path: Some(p.clone()), contents: csv },
            Artifact { path: Some(fit_path(p)), contents: json },
        ],
        None => vec![Artifact { path: None, contents: csv }],
    };
    Ok(Outcome { artifacts, warnings, verdict_failed: false })
}

#[derive(Debug, Serialize)]
struct DensityResult {
    densities: Vec<LandauDensity>,
    /// Volume of the supplied domain, for comparing normalized densities against it.
    #[serde(skip_serializing_if = "Option::is_none")]
    domain_volume: Option<f64>,
}

pub fn cmd_density(cfg: &RunConfig) -> Result<Outcome> {
    let dom = cfg.domain.as_deref().map(load_domain).transpose()?;
    let ps = load_point_set(cfg, dom.as_ref().map(Domain::dimension))?;
    let d = ps.dimension();
    let radii = parse_radii(require(&cfg.radii, "radii")?)?;
    if radii.is_empty() || radii[0] <= 0.0 {
        return Err(Error::InvalidArgument("density needs positive cube radii".into()));
    }
    let search_box = match &cfg.search_box {
        Some(s) => parse_box(s, d)?,
        None => AxisBox::unit_cube(d),
    };
    let centers = CenterSpec::Grid { spacing: cfg.spacing };
    let densities =
        radii.iter().map(|&r| landau_density(&ps, r, &search_box, &centers)).collect::<Result<Vec<_>>>()?;
    let result = DensityResult { densities, domain_volume: dom.as_ref().map(Domain::volume) };
    Ok(single(cfg, report(cfg, InputSummary::new(dom.as_ref(), None, Some(&ps)), result)?))
}

pub fn cmd_empty_cube(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.corpus {
        let table = corpus_table(&default_corpus()?, cfg.delta)?;
        return Ok(single(cfg, report(cfg, InputSummary::new(None, None, None), table)?));
    }
    let dom = cfg.domain.as_deref().map(load_domain).transpose()?;
    let ps = load_point_set(cfg, dom.as_ref().map(Domain::dimension))?;
    let d = ps.dimension();
    let search_box = parse_box(cfg.search_box.as_deref().unwrap_or("0:10"), d)?;
    let inputs = InputSummary::new(dom.as_ref(), None, Some(&ps));
    let Some(dom) = dom else {
        let cube = largest_empty_cube(&ps, &search_box, cfg.delta)?;
        return Ok(single(cfg, report(cfg, inputs, cube)?));
    };
    let alpha = cfg.alpha.unwrap_or(d as f64 - 1.0);
    let (a, b) = match (cfg.frame_a, cfg.frame_b) {
        (Some(a), Some(b)) => (a, b),
        (None, None) => {
            let setup = TilingSetup::new(&dom, ConvexBody::unit_cube(d), cfg.trunc, &qmc(cfg))?;
            let fb = estimate_frame_bounds(&setup, &ps, &SampleCenters::auto(&ps, cfg.centers, cfg.seed))?;
            if !(fb.a_hat > 0.0) {
                return Err(Error::InvalidArgument(
                    "estimated lower frame bound is not positive; pass --frame-a and --frame-b".into(),
                ));
            }
            (fb.a_hat, fb.b_hat)
        }
        _ => return Err(Error::InvalidArgument("--frame-a and --frame-b must be given together".into())),
    };
    let r = check_empty_cube_bounds(&dom, &ps, alpha, a, b, &search_box, cfg.delta, None)?;
    Ok(single(cfg, report(cfg, inputs, r)?))
}

pub fn cmd_example1(cfg: &RunConfig) -> Result<Outcome> {
    let radii = parse_radii(cfg.radii.as_deref().unwrap_or(""))?;
    let ps = crate::pointsets::construct_example1(cfg.dim, radii.clone())?;
    let body = body_or_ball(cfg, cfg.dim)?;
    let radius = cfg.window.unwrap_or_else(|| radii.last().map_or(10.0, |r| r + 2.0));
    let pts = ps.enumerate(&Window::centered(body, radius)?)?;
    Ok(single(cfg, format_point_list(&pts)))
}

#[derive(Debug, Serialize)]
struct DomainInfo {
    kind: DomainKind,
    dimension: usize,
    volume: f64,
    bounding_box: Vec<[f64; 2]>,
    bounding_diameter: f64,
    inscribed_cube_side: f64,
    minkowski: MinkowskiEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    isoperimetric: Option<IsoperimetricRecord>,
}

pub fn cmd_domain_info(cfg: &RunConfig) -> Result<Outcome> {
    let dom = load_domain(require(&cfg.domain, "domain")?)?;
    let alpha = cfg.alpha.unwrap_or(dom.dimension() as f64 - 1.0);
    let info = DomainInfo {
        kind: dom.kind(),
        dimension: dom.dimension(),
        volume: dom.volume(),
        bounding_box: dom.bounding_box().intervals().to_vec(),
        bounding_diameter: dom.bounding_diameter(),
        inscribed_cube_side: inscribed_cube_side(&dom),
        minkowski: minkowski_content_estimate(&dom, alpha, &feature_scales(&dom))?,
        isoperimetric: polygon_isoperimetric_check(&dom).ok(),
    };
    Ok(single(cfg, report(cfg, InputSummary::new(Some(&dom), None, None), info)?))
}

