//! Batch front end: `spectral-weyl <command> [flags]`.
//!
//! Exit codes: 0 ok, 1 verdict did not support the claim, 2 bad input, 3 internal failure.
//! Errors are reported as one JSON object on standard error. `SPECTRAL_WEYL_THREADS` caps
//! the worker pool.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde_json::json;

pub use commands::{dispatch, fit_path, Artifact, Outcome};
pub use config::{parse_box, parse_radii, Command, InputSummary, RunConfig};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const THREADS_ENV: &str = "SPECTRAL_WEYL_THREADS";

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificateUnavailable(_) | Error::FitUnavailable(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

pub fn error_json(kind: &str, message: &str, code: i32) -> String {
    json!({ "error": kind, "message": message, "exit_code": code }).to_string()
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| std::io::Error::other("output path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    let result = std::fs::File::create(&tmp).and_then(|mut f| {
        f.write_all(contents.as_bytes())?;
        f.sync_all()
    });
    match result.and_then(|()| std::fs::rename(&tmp, path)) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = std::fs::remove_file(&tmp);
            Err(e)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or(format!("{THREADS_ENV}={v:?} is not a positive integer"))?;
    // A pool may already exist when called repeatedly in one process; keep it.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses arguments, runs the command, writes outputs and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return EXIT_OK;
        }
        Err(e) => {
            eprintln!("{}", error_json("usage", e.to_string().trim(), EXIT_INPUT));
            return EXIT_INPUT;
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("{}", error_json("invalid-argument", &msg, EXIT_INPUT));
        return EXIT_INPUT;
    }
    let outcome = match dispatch(&cfg) {
        Ok(o) => o,
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("{}", error_json(e.kind(), &e.to_string(), code));
            return code;
        }
    };
    for w in &outcome.warnings {
        eprintln!("{}", json!({ "warning": w }));
    }
    for a in &outcome.artifacts {
        let written = match &a.path {
            Some(p) => write_atomic(Path::new(p), &a.contents),
            None => std::io::stdout().write_all(a.contents.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("{}", error_json("io", &e.to_string(), EXIT_INTERNAL));
            return EXIT_INTERNAL;
        }
    }
    if outcome.verdict_failed {
        EXIT_VERDICT
    } else {
        EXIT_OK
    }
}

/// Entry point for the binary.
pub fn main() -> ! {
    std::process::exit(run(std::env::args_os()))
}
