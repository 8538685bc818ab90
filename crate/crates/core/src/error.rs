//! Error types shared across the crate.

use thiserror::Error;

/// Errors from the dense linear-algebra kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("eigenvalue iteration failed to converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },
    #[error("matrix is numerically singular (pivot {pivot:.3e})")]
    Singular { pivot: f64 },
}

/// Errors from spectral analysis and Riesz projections.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("eigenvalue at distance {dist:.3e} from the integration contour")]
    EigenvalueOnContour { dist: f64 },
    #[error("quadrature did not converge: |P^2-P| = {defect:.3e} at {points} points")]
    QuadratureDivergence { defect: f64, points: usize },
    #[error("spectrum is not symmetric about the imaginary axis: {0}")]
    SymmetryViolation(String),
}

/// Errors from Krein-form subspace classification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KreinError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("dimension mismatch between form ({form}) and basis ({basis})")]
    DimensionMismatch { form: usize, basis: usize },
    #[error("gram matrix is degenerate (smallest |eigenvalue| {min_abs:.3e})")]
    Degenerate { min_abs: f64 },
}

/// Errors from Hamiltonian assembly and structure checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HamiltonianError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("block {which} is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { which: char, asymmetry: f64 },
    #[error("blocks must be square matrices of equal size")]
    SizeMismatch,
    #[error("uniform positivity level gamma is not set")]
    GammaUnset,
    #[error("sample point at distance {dist:.3e} collides with the spectrum of the diagonal part")]
    RaySpectrumCollision { dist: f64 },
    #[error("probe vector gives a zero denominator in the subordination quotient")]
    ZeroDenominator,
}

/// Errors from sc-set enumeration and invariant-subspace construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubspaceError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Krein(#[from] KreinError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("no neutral invariant split found; gram signature ({pos},{neg})")]
    NotFound { pos: usize, neg: usize },
    #[error("subspace dimension {got} does not match half-dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("eigenvalue within {dist:.3e} of the imaginary axis")]
    AxisEigenvalue { dist: f64 },
    #[error("sc-set is unusable: {0}")]
    UnusableScSet(String),
}

/// Errors from Riccati solution extraction and certification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiccatiError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error("subspace is not a graph (smallest singular value of the upper block {sigma_min:.3e})")]
    NotAGraph { sigma_min: f64 },
    #[error("gap X+ - X- is numerically singular")]
    SingularGap,
    #[error("X+ is not uniformly positive at level {level:.3e}")]
    NotUniform { level: f64 },
    #[error("spectrum has eigenvalues on the imaginary axis")]
    ImaginarySpectrum,
    #[error("matrix is defective; eigenvector enumeration unsupported")]
    Defective,
}

/// Errors from the example-model generators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error("coefficient list violates conjugate symmetry at mode {mode}")]
    NotReal { mode: i64 },
    #[error("certified lower bound {bound:.3e} of {which} is not positive")]
    NotPositive { which: char, bound: f64 },
    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),
}
