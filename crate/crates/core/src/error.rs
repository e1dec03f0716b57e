use thiserror::Error;

/// Errors raised by the geometric model and its numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (symmetry residual {residual:.3e})")]
    NonHermitian { residual: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("adjacent eigenvalue groups {lower} and {upper} are closer than twice the grouping tolerance")]
    AmbiguousGrouping { lower: f64, upper: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("invalid Grassmann parameter m = {0} (need m >= 2)")]
    InvalidParameter(usize),
    #[error("element is not in p (k-part norm {residual:.3e})")]
    NotInP { residual: f64 },
    #[error("unexpected restricted root ({0}, {1})")]
    UnexpectedRoot(f64, f64),
    #[error("multiplicity mismatch for root {root}: expected {expected}, found {found}")]
    MultiplicityMismatch {
        root: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown root label {0:?}")]
    UnknownLabel(String),
    #[error("t = {0} lies outside the closed Weyl chamber [0, pi/4]")]
    OutOfChamber(f64),
    #[error("zero vector")]
    ZeroVector,
    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("vector is regular; a singular vector is required")]
    RegularVector,
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("Jacobi operator mixes tangent and normal spaces of the split (residual {0:.3e})")]
    SplitNotInvariant(f64),
    #[error("flat direction on the normal side of the split")]
    NormalKernel,
    #[error("principal curvature table does not live in the tangent space of the model (residual {0:.3e})")]
    BasisMismatch(f64),
    #[error("could not resolve principal curvature role {0}")]
    RoleResolutionFailure(String),
    #[error("normal has the wrong singular type for this operation")]
    WrongSingularType,
    #[error("bad table parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
