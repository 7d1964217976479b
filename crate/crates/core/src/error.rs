use alloc::boxed::Box;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// A level index outside the allowed range `0..=max`.
    LevelOutOfRange {
        n: usize,
        max: usize,
    },
    /// The trap has no level pair / interior for the requested operation.
    NoLevels {
        what: &'static str,
    },
    /// Adaptive quadrature exhausted its evaluation budget.
    NonConvergence {
        evaluations: usize,
        abs_error: f64,
        tol: f64,
    },
    Overflow {
        what: &'static str,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// A dense construction was requested on a basis larger than allowed.
    TooManyLevels {
        levels: usize,
        limit: usize,
    },
    /// Numeric and closed-form moment integrals disagree.
    MomentMismatch {
        n: usize,
        numeric: f64,
        analytic: f64,
    },
    /// A sweep point failed; carries the offending `N`.
    SweepPoint {
        n_param: f64,
        source: Box<Error>,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::LevelOutOfRange { n, max } => {
                write!(f, "level {n} is outside the allowed range 0..={max}")
            }
            Error::NoLevels { what } => write!(f, "no levels available for {what}"),
            Error::NonConvergence { evaluations, abs_error, tol } => write!(
                f,
                "quadrature did not converge after {evaluations} evaluations \
                 (error estimate {abs_error:e}, tolerance {tol:e})"
            ),
            Error::Overflow { what } => write!(f, "overflow: {what}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::TooManyLevels { levels, limit } => {
                write!(f, "{levels} levels exceed the limit of {limit}")
            }
            Error::MomentMismatch { n, numeric, analytic } => {
                write!(f, "moment integral for level {n}: numeric {numeric:e} vs closed form {analytic:e}")
            }
            Error::SweepPoint { n_param, source } => write!(f, "at N = {n_param}: {source}"),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::SweepPoint { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}
