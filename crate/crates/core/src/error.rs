use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid token `{token}`: {reason}")]
    Parse { token: String, reason: &'static str },

    #[error("partition text must have the form `a-side | b-side`, got `{0}`")]
    PartitionSyntax(String),

    #[error("odd volume {0}: no multigraph has an odd degree sum")]
    OddVolume(u64),

    #[error("sides are unbalanced: volume {left} vs {right}")]
    Unbalanced { left: u64, right: u64 },

    #[error("multiplicity bound r must be at least 1")]
    ZeroMultiplicity,

    #[error("no multigraph realization: largest degree {largest} exceeds the rest {rest}")]
    NotMultigraphic { largest: u64, rest: u64 },

    #[error("sequence is not graphic")]
    NotGraphic,

    #[error("partition is not bigraphic")]
    NotBigraphic,

    #[error("no realization with multiplicity at most {0}")]
    InfeasibleAtR(u64),

    #[error("sequence has no balanced partition")]
    NoBalancedPartition,

    #[error("constructed multigraph failed validation: {0}")]
    ValidationFailed(String),

    #[error("arithmetic overflow while summing degrees")]
    Overflow,

    #[error("instance too large for exhaustive search (n = {n}, volume = {volume})")]
    OracleTooLarge { n: usize, volume: u64 },

    #[error("construction needs {0} helper vertices, which is more than supported")]
    TooLarge(u64),

    #[error("search budget of {budget} partitions exhausted")]
    BudgetExceeded { budget: usize },

    #[error("invalid family parameter: {0}")]
    FamilyParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
