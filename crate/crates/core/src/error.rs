use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("modulus must be at least 2")]
    BadModulus,

    #[error("polynomial is not monic in `{0}`")]
    NotMonic(String),

    #[error("variable `{0}` occurs in neither input")]
    MissingVariable(String),

    #[error("{value} is divisible by {modulus}")]
    NotUnit { value: u64, modulus: u64 },

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(String, String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("basis does not match parameters: {0}")]
    BasisMismatch(String),

    #[error("no admissible residue class: {0}")]
    NoAdmissibleResidue(String),

    #[error("no liftable point modulo powers of {p} up to precision {k_max} (inconclusive)")]
    NotFound { p: u64, k_max: u32 },

    #[error("special-prime recipe inapplicable at p = {p}: {reason}")]
    RecipeInapplicable { p: u64, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no real root certified: {0}")]
    NoRealPoint(String),
}
