use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("closure exceeded cap of {cap} elements")]
    ClosureExceeded { cap: usize },
    #[error("not a bijection on {{1..{degree}}}: {reason}")]
    NotBijective { degree: usize, reason: String },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("automorphism group exceeds cap of {cap}")]
    AutCapExceeded { cap: usize },
    #[error("group of order {order} too large for this operation (cap {cap})")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no splitting prime found below {bound}")]
    NoSplittingPrime { bound: u64 },
    #[error("degenerate eigenspace while splitting character table (prime {prime})")]
    DegenerateEigenspace { prime: u64 },
    #[error("residue {residue} mod {prime} does not lift to {{-1,0,1}}")]
    LiftAmbiguous { residue: u64, prime: u64 },
    #[error("residue {residue} mod {prime} lifts outside [0, {order})")]
    LiftOutOfRange { residue: u64, prime: u64, order: usize },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of size {q} too large (cap {cap})")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("lacunary precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("lacunary reduction produced the zero polynomial")]
    ZeroResult,
    #[error("scan too large: {0}")]
    ScanTooLarge(String),
    #[error("wreath instance too large: {0}")]
    SizeExceeded(String),
    #[error("wreath element must have trivial permutation part")]
    PermNotTrivial,
    #[error("cannot parse group spec `{0}`")]
    BadGroupSpec(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
