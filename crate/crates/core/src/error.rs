use alloc::boxed::Box;
use core::fmt;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// `(K, N)` outside the regime `2 <= K < N`.
    InvalidConfig { receivers: usize, samples: usize },
    /// The Painlevé II integration left the Hastings–McLeod branch.
    Divergence { at: f64 },
    /// An iteration hit its cap before converging.
    NoConvergence { what: &'static str, iterations: usize },
    /// A tabulated object violates one of its invariants.
    Invariant(&'static str),
    /// Input matrix is not Hermitian within tolerance.
    NotHermitian { deviation: f64 },
    /// Smallest eigenvalue is not positive, so the ratio statistic is undefined.
    Degenerate { min_eigenvalue: f64 },
    /// Slice or matrix dimensions do not agree.
    Shape { expected: usize, found: usize },
    /// A failure while processing one `(K, N)` pair.
    ForConfig { receivers: usize, samples: usize, source: Box<Error> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::InvalidConfig { receivers, samples } => write!(
                f,
                "invalid sensing configuration K={receivers}, N={samples}: need 2 <= K < N"
            ),
            Error::Divergence { at } => {
                write!(f, "Painlevé II solution left the Hastings-McLeod branch at s = {at}")
            }
            Error::NoConvergence { what, iterations } => {
                write!(f, "{what} did not converge after {iterations} iterations")
            }
            Error::Invariant(msg) => write!(f, "invariant violated: {msg}"),
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::Degenerate { min_eigenvalue } => {
                write!(f, "smallest eigenvalue {min_eigenvalue:e} is not positive")
            }
            Error::Shape { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ForConfig { receivers, samples, source } => {
                write!(f, "K={receivers}, N={samples}: {source}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_probability(what: &'static str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value: p })
    }
}
