use core::fmt;

use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// A slab coefficient was evaluated on one of its poles.
    Pole {
        k_z: Complex64,
        k_par: f64,
    },
    /// Quadrature or series budget exhausted before reaching the tolerance.
    Convergence {
        best: f64,
        err_bound: f64,
    },
    /// Per-transition data does not line up with the atom.
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    Unsupported(&'static str),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "invalid {what}: {value}"),
            Error::Pole { k_z, k_par } => {
                write!(f, "slab coefficient evaluated at a pole (k_z = {k_z}, k_par = {k_par})")
            }
            Error::Convergence { best, err_bound } => {
                write!(f, "no convergence within budget (best estimate {best:e}, error bound {err_bound:e})")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} per-transition entries, found {found}")
            }
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
        }
    }
}

impl core::error::Error for Error {}
