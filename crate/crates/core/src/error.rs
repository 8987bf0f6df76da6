use thiserror::Error;

/// Which tail of a Laurent series failed to converge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSide {
    /// Positively indexed terms λ^{-n} f∘φ_n, n → +∞.
    Forward,
    /// Negatively indexed terms, n → -∞.
    Backward,
}

impl std::fmt::Display for SeriesSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesSide::Forward => write!(f, "forward"),
            SeriesSide::Backward => write!(f, "backward"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplier must be > 1, got {0}")]
    InvalidMultiplier(f64),

    #[error("degenerate linear fractional map: ad - bc ≈ 0")]
    DegenerateMap,

    #[error("the identity map has no distinguished fixed points")]
    IdentityFixedPoints,

    #[error("map is not hyperbolic: {0}")]
    NotHyperbolic(String),

    #[error("{0}")]
    InvalidMap(String),

    #[error("f_a lies in H^2 only for |Re a| < 1/2, got Re a = {0}")]
    NotInHardySpace(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("Laurent series diverges on the {side} side: term ratio {ratio:.6} ≥ 1")]
    Divergent { side: SeriesSide, ratio: f64 },

    #[error("decay fit needs at least {needed} usable points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config parse error: {0}")]
    Json(#[from] serde_json::Error),
}
