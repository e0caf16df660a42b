use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined gap sequence: set has {0} element(s), need at least 2")]
    UndefinedGaps(usize),

    #[error("degenerate map: scale factor is zero")]
    DegenerateMap,

    #[error("elements are not strictly ascending at position {0}")]
    NotAscending(usize),

    #[error("set is not convex: gap d_{index} >= d_{next}", next = .index + 1)]
    NotConvex { index: usize },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("curvature too large: convexity chain fails at block {ell}")]
    CurvatureTooLarge { ell: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot convexify an arithmetic progression preserving both endpoints of every gap-run")]
    WholeSetRun,

    #[error("empty set")]
    EmptySet,

    #[error("verification failed: {0}")]
    Verification(String),
}
