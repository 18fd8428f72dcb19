use num_complex::Complex64;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("point {0} lies outside the handle's domain")]
    Domain(Complex64),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("derivative order {0} unsupported (max 8)")]
    DerivativeOrder(u32),
    #[error("no differentiation circle fits at {0} (too close to the domain boundary)")]
    NoDifferentiationCircle(Complex64),
    #[error("quadrature failed to converge: best estimate {best}, error estimate {err}")]
    NoConvergence { best: f64, err: f64 },
    #[error("zero or pole within {0} of the contour; perturb and retry")]
    ContourTooClose(f64),
    #[error("winding number {0} is more than 0.25 from an integer")]
    RoundingAmbiguity(f64),
    #[error("pole on the circle |z| = {0}")]
    PoleOnCircle(f64),
    #[error("characteristic T(r) <= 0 at r = {0}; deficiency undefined")]
    DegenerateT(f64),
    #[error("no Rolle point found in ({0}, {1}): no sign change and no |g'| minimum below threshold")]
    RolleFailure(f64, f64),
    #[error("interlacing violated at index {0}: require a_k < b_k < a_(k+1)")]
    InterlacingViolation(usize),
    #[error("registry incomplete: {0}")]
    IncompleteRegistry(&'static str),
    #[error("no zero/pole-free horizontal segment within 1e-6 of sigma = {0}")]
    PerturbationFailed(f64),
    #[error("w = {0} lies on the cut {{X real: |X| >= 2}}")]
    BranchCut(Complex64),
    #[error("radius {0} is flagged exceptional; local model not valid there")]
    ExceptionalRadius(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent counts: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
