use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("mass {0} outside [-1, 1]")]
    MassOutOfRange(f64),
    #[error("operation requires a {expected} walk")]
    FamilyMismatch { expected: &'static str },
    #[error("unsupported walk configuration: {0}")]
    Unsupported(String),
    #[error("omega = pi: logarithm branch is ambiguous")]
    BranchSingularity,
    #[error("singular point: |sin omega| = {0:e}")]
    SingularPoint(f64),
    #[error("wave-vector outside the Brillouin zone")]
    OutOfZone,
    #[error("newton iteration did not converge (residual {residual:e})")]
    OutOfImage { residual: f64 },
    #[error("inverse converged into region {got}, expected region {expected}")]
    RegionViolation { expected: usize, got: usize },
    #[error("boosted point left the image of its region at parameter {parameter}")]
    OrbitEscape { parameter: f64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("support of size {size} exceeds enumeration cap {cap}")]
    SupportTooLarge { size: usize, cap: usize },
    #[error("size {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("coset factorization failed: {0}")]
    CosetFactorization(String),
    #[error("kernel support exceeds lattice: displacement {displacement} needs N > {needed}")]
    SupportExceedsLattice { displacement: i64, needed: i64 },
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
