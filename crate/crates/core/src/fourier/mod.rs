//! Fourier transforms of indicator functions, the power spectrum `f = |χ̂_Ω|²`, and shell
//! and tail integrals of `f`.

pub mod shell;
pub mod spectrum;
pub mod transform;

pub use shell::{
    body_integral, least_squares, shell_integral, shell_integral_of, tail_certificate, Integrand, LineFit,
    QmcOptions, ShellEstimate, ShellRecord, TailCertificate, TailMethod,
};
pub use spectrum::{CachePolicy, PowerSpectrum};
pub use transform::{ft_indicator, interval_factor, sinc};
