//! Fourier spectra and frames of bounded domains.
//!
//! Given a domain `Ω`, a symmetric convex body `K` and a point set `Λ`, the crate checks
//! whether the exponentials `e^{2πiλ·x}` form an orthogonal basis or frame for `L²(Ω)` through
//! the tiling identity `Σ_λ |χ̂_Ω(x − λ)|² = |Ω|²`, counts `Λ` in dilates of `K` against
//! `|K||Ω|R^d`, and measures how large an empty cube `Λ` can leave.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod geometry;
pub mod pointsets;
pub mod qmc;

pub use error::{Error, Result};
