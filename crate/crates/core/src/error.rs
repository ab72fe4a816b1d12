use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("generator index {index} out of range for rank {rank}")]
    InvalidGenerator { index: usize, rank: usize },
    #[error("parabolic subgroup is not spherical")]
    NonSphericalParabolic,
    #[error("Coxeter system is not spherical")]
    NonSpherical,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no permutation oracle for this Coxeter type")]
    UnsupportedType,
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("not a generalized polygon: {0}")]
    InvalidPolygon(String),
    #[error("chamber graph is disconnected")]
    DisconnectedChamberGraph,
    #[error("inconsistent Weyl distance labelling: {0}")]
    InconsistentLabelling(String),
    #[error("twin building axioms fail: {0}")]
    AxiomValidationFailed(String),
    #[error("codistance needs chambers from opposite halves")]
    SameHalf,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("involution classification failed: {0}")]
    ClassificationFailed(String),
    #[error("order decomposition not applicable: {0}")]
    NotApplicable(String),
    #[error("map is incompatible with the building: {0}")]
    IncompatibleBuilding(String),
    #[error("witness validation failed: {0}")]
    WitnessValidationFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
