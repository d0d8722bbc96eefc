//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of constructions and checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Invalid argument or violated precondition.
    Domain(String),
    /// Geometric degeneracy (zero chord, oversized edge, bad orientation).
    Geometry(String),
    /// A configured budget (word count, basis size, point count) was exceeded.
    Resource(String),
    /// Missing or inconsistent optional configuration (e.g. no candidate open set).
    Config(String),
    /// A Toeplitz matrix was requested beyond the available harmonic range.
    InsufficientHarmonics { have: usize, need: usize },
    /// Matrix dimensions do not match.
    ShapeMismatch {
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    /// An iterative routine did not converge; carries the best estimate.
    Numeric { message: String, best: f64 },
    /// A root bracket does not straddle the target; carries the measured values.
    Bracket { ratio_lo: f64, ratio_hi: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Geometry(msg) => write!(f, "geometry error: {msg}"),
            Error::Resource(msg) => write!(f, "resource budget exceeded: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::InsufficientHarmonics { have, need } => write!(
                f,
                "insufficient harmonics: have |n| <= {have}, need |n| <= {need}"
            ),
            Error::ShapeMismatch { lhs, rhs } => write!(
                f,
                "shape mismatch: {}x{} vs {}x{}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            Error::Numeric { message, best } => {
                write!(f, "numeric error: {message} (best estimate {best})")
            }
            Error::Bracket { ratio_lo, ratio_hi } => write!(
                f,
                "bracket does not straddle: ratio(lo) = {ratio_lo}, ratio(hi) = {ratio_hi}"
            ),
        }
    }
}

impl core::error::Error for Error {}
