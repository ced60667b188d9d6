use std::path::PathBuf;

/// Errors raised by the dimension formulas, the searches and the I/O layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("Conrey label {label} is not a unit modulo {modulus}")]
    NotAUnit { modulus: u64, label: i64 },

    #[error("{divisor} does not divide {n}")]
    NotADivisor { divisor: u64, n: u64 },

    #[error("conductor {conductor} does not divide the level {level}")]
    ConductorDoesNotDivide { conductor: u64, level: u64 },

    #[error("weight {weight} must be at least 2")]
    WeightTooSmall { weight: u64 },

    #[error(
        "parity mismatch: chi(-1) = {chi_parity} but (-1)^k = {weight_parity} for k = {weight}"
    )]
    ParityMismatch {
        weight: u64,
        chi_parity: i8,
        weight_parity: i8,
    },

    #[error("{prime} divides {x}, so the CRT lift is undefined")]
    PrimeDividesArgument { prime: u64, x: i64 },

    #[error("brute-force path capped at {cap}, got {n}")]
    BruteForceCap { n: u64, cap: u64 },

    #[error("theta(f) vanishes at f = {f}")]
    ThetaVanishes { f: u64 },

    #[error("cannot allocate a sieve table up to {limit}")]
    MemoryBudget { limit: u64 },

    #[error("sieve limit {requested} exceeds capacity {capacity}")]
    SieveCapacity { requested: u64, capacity: u64 },

    #[error(
        "search up to N = {requested} exceeds the default ceiling {ceiling}; pass --full to run it"
    )]
    ResourceGuard { requested: u64, ceiling: u64 },

    #[error("character value {value} is not of the expected order {expected}")]
    UnexpectedCharValue { value: String, expected: u64 },

    #[error("malformed fixture {name}: {reason}")]
    Fixture { name: String, reason: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
