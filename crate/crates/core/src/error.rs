use std::fmt;

/// Errors surfaced by the arrangement, syzygy and combinatorics layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A component form is identically zero.
    ZeroForm,
    /// Two components are proportional (they define the same curve).
    DuplicateComponent(String),
    /// A conic whose symmetric 3x3 coefficient matrix is singular.
    SingularConic(String),
    /// A component has the wrong degree or is otherwise unusable.
    InvalidComponent(String),
    /// A component id does not exist in the arrangement.
    UnknownComponent(String),
    /// Deleting the component would leave fewer than two components.
    TooFewComponents,
    /// A singular point where two local branches share a tangent direction.
    NonOrdinarySingularity(String),
    /// A singular point with five or more components through it.
    MultiplicityTooHigh(String),
    /// Random shears failed to separate conic-conic intersection points.
    ShearExhausted,
    /// The Milnor algebra Hilbert function did not stabilize inside the
    /// search window.
    StabilizationFailure,
    /// Two routes to the same quantity disagree; indicates a bug.
    InternalInconsistency(String),
    /// The du Plessis-Wall upper bound was violated; indicates a bug.
    BoundViolated(String),
    /// Exponents requested for a curve that is not free.
    NotFree,
    /// A parameter is outside the range a theorem or formula covers.
    OutOfRange(String),
    /// A weak combinatorics vector with points of multiplicity five or more.
    UnsupportedMultiplicity(usize),
    /// Total degree too small for the certification targets.
    DegreeTooSmall(usize),
    /// Polynomial factorization requested beyond the supported degree.
    UnsupportedDegree(usize),
    /// gcd of two zero polynomials.
    BothZero,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroForm => write!(f, "zero form is not a valid component"),
            Error::DuplicateComponent(s) => write!(f, "duplicate component: {s}"),
            Error::SingularConic(s) => write!(f, "singular conic: {s}"),
            Error::InvalidComponent(s) => write!(f, "invalid component: {s}"),
            Error::UnknownComponent(s) => write!(f, "unknown component: {s}"),
            Error::TooFewComponents => {
                write!(f, "deletion would leave fewer than two components")
            }
            Error::NonOrdinarySingularity(s) => {
                write!(f, "non-ordinary singularity: {s}")
            }
            Error::MultiplicityTooHigh(s) => {
                write!(f, "singular point of multiplicity at least five: {s}")
            }
            Error::ShearExhausted => {
                write!(f, "shear retries exhausted while separating conic-conic points")
            }
            Error::StabilizationFailure => {
                write!(f, "Hilbert function did not stabilize inside the search window")
            }
            Error::InternalInconsistency(s) => write!(f, "internal inconsistency: {s}"),
            Error::BoundViolated(s) => write!(f, "du Plessis-Wall bound violated: {s}"),
            Error::NotFree => write!(f, "curve is not free; exponents are undefined"),
            Error::OutOfRange(s) => write!(f, "out of range: {s}"),
            Error::UnsupportedMultiplicity(r) => {
                write!(f, "multiplicity {r} is outside the supported range (2..=4)")
            }
            Error::DegreeTooSmall(d) => {
                write!(f, "total degree {d} is below the minimum of 5")
            }
            Error::UnsupportedDegree(d) => {
                write!(f, "factorization of degree {d} is not supported (max 4)")
            }
            Error::BothZero => write!(f, "gcd of two zero polynomials is undefined"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
