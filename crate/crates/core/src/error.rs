use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which structural property a snapshot or field failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    ConjugateSymmetry,
    ZeroMean,
    DivergenceFree,
    Finite,
}

impl std::fmt::Display for Invariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Invariant::ConjugateSymmetry => "conjugate symmetry",
            Invariant::ZeroMean => "zero mean",
            Invariant::DivergenceFree => "divergence-free",
            Invariant::Finite => "finite coefficients",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {key}: {message}")]
    Config { key: String, message: String },

    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("numerical divergence at t = {time}: non-finite state (CFL number {cfl:.3e})")]
    Divergence { time: f64, cfl: f64 },

    #[error(
        "noise intensity inadmissible: grad sup-norm ratio {ratio:.6} >= 1 \
         (rerun with --force to override)"
    )]
    Assumption { ratio: f64 },

    #[error("time {time} outside noise window [{start}, {end}]")]
    NoiseWindow { time: f64, start: f64, end: f64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(Invariant),

    #[error("snapshot: bad magic {0:?}")]
    BadMagic([u8; 4]),

    #[error("snapshot: unsupported format version {0}")]
    BadVersion(u16),

    #[error("snapshot: truncated (expected {expected} bytes, found {found})")]
    Truncated { expected: usize, found: usize },

    #[error("snapshot header: {0}")]
    BadHeader(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }
}
