use thiserror::Error;

pub type Result<T, E = BvpError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BvpError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A value handed to `φ⁻¹` was outside `(−a, a)`. `value` is the worst
    /// offender and `node` its grid index.
    #[error("value {value} at node {node} is outside the range (-{limit}, {limit})")]
    RangeViolation { node: usize, value: f64, limit: f64 },

    #[error("right-hand side is not finite at node {node} (t = {t})")]
    NonFinite { node: usize, t: f64 },

    #[error("planar map is not finite at ({x}, {y})")]
    NonFiniteMap { x: f64, y: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("empty or degenerate domain: {0}")]
    EmptyDomain(String),

    #[error("map vanishes on the boundary near ({x}, {y}): |g| = {norm:e}")]
    ZeroOnBoundary { x: f64, y: f64, norm: f64 },

    #[error("boundary refinement exhausted at depth {depth} near ({x}, {y})")]
    RefinementExhausted { depth: u32, x: f64, y: f64 },

    #[error("no convergence after {iterations} iterations (best residual {best_residual:e})")]
    NoConvergence { iterations: usize, best_residual: f64 },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("invalid thresholds: M1 = {m1} must be strictly below M2 = {m2}")]
    InvalidThresholds { m1: f64, m2: f64 },

    #[error("no root found: {0}")]
    NoRoot(String),

    #[error("integration left the range of phi at t = {time}")]
    StepRejected { time: f64 },
}
