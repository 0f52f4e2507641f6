//! Verdicts: orthogonality and tiling checks, frame bounds, counting curves with error
//! exponents, and the empty-cube search with its two upper bounds.

pub mod corpus;
pub mod counting;
pub mod empty_cube;
pub mod orthogonality;
pub mod tiling;

pub use corpus::{comb_polygon, corpus_table, default_corpus, CorpusEntry, CorpusRow, CorpusTable};
pub use counting::{counting_curve, curve_csv, fit_error_exponent, CountSample, CountingCurve, ErrorFit, DEFAULT_ETA};
pub use empty_cube::{check_empty_cube_bounds, feature_scales, largest_empty_cube, EmptyCube, EmptyCubeReport};
pub use orthogonality::{check_orthogonality, OrthogonalityCheck, DEFAULT_ORTHOGONALITY_TOL};
pub use tiling::{
    default_window_radius, estimate_frame_bounds, tiling_residual, verify, Claim, FrameBounds, SampleCenters, TilingResidual, TilingSample,
    TilingSetup, VerificationReport, Verdict, VerifyOptions,
};
