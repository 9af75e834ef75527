use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Whether a failure is the caller's fault or a broken internal invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Precondition,
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("q^0 coefficient is not invertible: {0}")]
    NonInvertible(String),
    #[error("theta argument is the trivial monomial")]
    ZeroArgument,
    #[error("exponent {value} is not on the declared lattice (root {root})")]
    OffLattice { value: String, root: i64 },
    #[error("interpolation needs at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("interpolation sample points must be distinct, nonzero and not +-1")]
    BadSamplePoints,
    #[error("interpolation inconsistent at q^{order}: validation point {point} disagrees")]
    InterpolationInconsistent { order: usize, point: String },
    #[error("malformed cone {cone}: {reason}")]
    MalformedCone { cone: usize, reason: String },
    #[error("ray {ray} is not primitive")]
    NonPrimitiveRay { ray: usize },
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not complete")]
    NotComplete,
    #[error("one-parameter subgroup {xi:?} is not generic (zero weight at cone {cone})")]
    NonGenericSubgroup { xi: Vec<i64>, cone: usize },
    #[error("no generic one-parameter subgroup found in the retry sequence")]
    NoGenericSubgroup,
    #[error("ray {0:?} does not lie in the relative interior of any cone, or is already a ray")]
    NotInterior(Vec<i64>),
    #[error("unsupported rank {0} for this operation")]
    UnsupportedRank(usize),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coefficient a_{ray} = -1: the pair genus is undefined")]
    LogCanonicalCoefficient { ray: usize },
    #[error("ray {ray} has alpha = 0 and b = 0: perturbed factor is singular")]
    DegeneratePerturbation { ray: usize },
    #[error("perturbation is not in the admissible class (fails at ray {ray})")]
    InvalidPerturbation { ray: usize },
    #[error("chi_y specialization is not a polynomial in y: {0}")]
    ChiYNotPolynomial(String),
    #[error("resolution did not terminate after {0} insertions")]
    ResolutionFailed(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InterpolationInconsistent { .. }
            | Error::Internal(_)
            | Error::ChiYNotPolynomial(_)
            | Error::ResolutionFailed(_) => ErrorClass::Internal,
            _ => ErrorClass::Precondition,
        }
    }
}
