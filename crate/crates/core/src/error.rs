use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification of failures, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Inputs violate an operation's mathematical precondition.
    Precondition,
    /// Textual input could not be parsed.
    Parse,
    /// An exhaustive search would exceed its configured cap.
    SearchCap,
    /// A checked theorem failed on inputs satisfying its hypotheses.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range (p < 2^62)")]
    ModulusTooLarge(u64),
    #[error("operands live in different fields (mod {0} vs mod {1})")]
    ModulusMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is not a quadratic residue mod {p}")]
    NonResidue { value: u64, p: u64 },
    #[error("p = {p} is not in the required residue class ({required})")]
    WrongResidueClass { p: u64, required: &'static str },
    #[error("root order {t} does not divide p - 1 = {}", .p - 1)]
    InvalidOrder { p: u64, t: u64 },
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(u64),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("inputs are not pairwise coprime")]
    NotCoprime,
    #[error("search space of {size} assignments exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("theorem check failed: {0}")]
    TheoremViolated(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Parse,
            Error::SearchSpaceTooLarge { .. } => ErrorKind::SearchCap,
            Error::TheoremViolated(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }
}
