use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by the exact engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed input or incompatible operands.
    Usage(String),
    /// A perturbation denominator `b(mu; n)` vanished for the given root vector.
    Resonance { mu: Vec<i64> },
    /// A Laurent expansion needed exponents outside the configured degree window.
    WindowTooSmall { needed: i64, dmax: i64 },
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Resonance { mu } => write!(f, "resonance: b(mu; n) = 0 at mu = {mu:?}"),
            Error::WindowTooSmall { needed, dmax } => write!(
                f,
                "degree window too small: exponent {needed} needed but Dmax = {dmax}"
            ),
        }
    }
}

impl core::error::Error for Error {}
