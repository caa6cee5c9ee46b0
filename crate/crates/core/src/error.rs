use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `αβ + |γ|² − 4 + 4i Im γ = 0`: inside and outside decouple and no
    /// transfer matrix exists.
    #[error("separated interaction: the transfer-matrix form does not exist")]
    SeparatedInteraction,

    #[error("degenerate denominator h + 1/h + 2cos φ = 0")]
    DegenerateDenominator,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation at the origin k = 0 (or z = 0) is singular")]
    OriginSingularity,

    #[error("k = {0} is a pole of the resolvent (det λ vanishes)")]
    PoleAtK(Complex64),

    #[error("interaction is not separated (αβ + |γ|² ≠ 4 or Im γ ≠ 0)")]
    NotSeparated,

    #[error("a zero of det λ lies on the contour; dilation retries exhausted")]
    BoundaryZero,

    #[error("Newton refinement did not converge from seed {seed} after {steps} steps")]
    NonConvergence { seed: Complex64, steps: usize },

    #[error("{count} zeros clustered in a cell of size {size:.3e} around {center}")]
    ClusteredZeros {
        center: Complex64,
        size: f64,
        count: i64,
    },

    #[error("resonance index assignment is ambiguous near Re k = {0}")]
    AmbiguousIndex(f64),

    #[error("coupling α must be nonzero for the δ-type prediction")]
    ZeroCoupling,

    #[error("Re γ must be nonzero for the intermediate-type prediction")]
    NotIntermediate,

    #[error("β must be nonzero for the δ′-type prediction")]
    NotDeltaPrime,

    #[error("separated interaction: poles are embedded eigenvalues, no asymptotic lattice")]
    Separated,

    #[error("invalid search region: {0}")]
    InvalidRegion(String),
}
