//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors reported by the solvers and matrix kernels.
#[derive(Debug, Error)]
pub enum CosseratError {
    /// Matrix is not Hermitian within the requested tolerance.
    #[error("matrix is not Hermitian (deviation {deviation:.3e} > tol {tol:.3e})")]
    NotHermitian { deviation: f64, tol: f64 },

    /// Eigenproblem is defective or too ill-conditioned to diagonalize.
    #[error("eigenproblem is ill-conditioned / defective; eigenvalues {values:?}")]
    IllConditioned { values: [num_complex::Complex64; 3] },

    /// Matrix is singular to working precision.
    #[error("matrix is singular (|det| = {det:.3e})")]
    Singular { det: f64 },

    /// Propagation direction violates the preconditions of the operation.
    #[error("bad direction: {0}")]
    BadDirection(String),

    /// A constitutive parameter needed by the operation is not available.
    #[error("missing parameter: {0}")]
    MissingParameter(String),

    /// An acoustic eigenvalue is negative: the material admits no real wave.
    #[error("complex frequency: eigenvalue {eigenvalue:.6e} < 0")]
    ComplexFrequency { eigenvalue: f64 },

    /// Constitutive parameters violate the real-plane-wave conditions.
    #[error("inadmissible material: {0}")]
    InadmissibleMaterial(String),

    /// The characteristic equation has a real root (speed at or above the
    /// limiting speed).
    #[error("characteristic equation has a real root at v = {v}; no decaying mode")]
    RealRoot { v: f64 },

    /// Characteristic roots coincide; closed-form amplitudes are unreliable.
    #[error("degenerate characteristic roots at v = {v}")]
    DegenerateRoots { v: f64 },

    /// Speed outside the admissible interval of the operation.
    #[error("speed {v} outside admissible range [0, {limit})")]
    OutOfRange { v: f64, limit: f64 },

    /// Quadrature abandoned: a rotated stiffness block is numerically singular.
    #[error("speed {v} too close to the limiting speed (cond T_theta = {cond:.3e})")]
    NearLimitingSpeed { v: f64, cond: f64 },

    /// The decay matrix has an eigenvalue with non-positive real part.
    #[error("decay matrix spectrum not in the right half plane (min Re = {min_re:.3e})")]
    SpectrumNotRight { min_re: f64 },

    /// det M never changes sign on the scanned interval.
    #[error("no secular root below the limiting speed (min det M = {margin:.3e})")]
    NoRoot { margin: f64 },

    /// Newton iteration on the Riccati system failed.
    #[error("Newton iteration diverged: {0}")]
    NewtonDiverged(String),

    /// The classical boundary system has full rank: the speed is not a
    /// secular root.
    #[error("boundary system is not rank-deficient (|det| = {det:.3e}); not a secular root")]
    SingularSystem { det: f64 },

    /// A numerical acceptance check failed after an otherwise successful run.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Material fails its own structural invariants.
    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    /// Invalid argument to a numerical routine.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Material file could not be read.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Material file could not be parsed.
    #[error("material file parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CosseratError>;
