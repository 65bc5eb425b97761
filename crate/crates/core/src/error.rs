use thiserror::Error;

/// Failure modes of the exact-arithmetic kernels.
///
/// Mathematical impossibilities (a theorem failing on verified input) are not
/// errors; they panic, because they mean the code is wrong. `Error` is for
/// contract violations on inputs and for resource limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate lattice")]
    DegenerateLattice,

    #[error("form not defined mod 2Z")]
    OddLattice,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("group too large: order {order} exceeds cap {cap}")]
    GroupTooLarge { order: String, cap: u64 },

    #[error("gluing condition q2 = -phi*q1 fails: {0}")]
    GluingCondition(String),

    #[error("budget exceeded: {visited} candidates visited, budget {budget}")]
    BudgetExceeded { visited: u64, budget: u64 },

    #[error("bounds unbounded: divisor has non-positive self-intersection {0}")]
    BoundsUnbounded(String),

    #[error("not reciprocal: constant term {0} != 1")]
    NotReciprocal(String),

    #[error("matrix not integral-similar: characteristic coefficient {0} is not an integer")]
    NotIntegralSimilar(String),

    #[error("identity, not an infinite-order isometry")]
    IdentityIsometry,

    #[error("theorem hypothesis k >= 2 violated: k = {0}")]
    RequiresKAtLeastTwo(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
