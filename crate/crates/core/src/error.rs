use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("cannot read scalar `{0}`")]
    BadScalar(String),

    #[error("the empty word is only available in unital mode")]
    EmptyWord,
    #[error("letter index {index} outside 1..={d}")]
    LetterOutOfRange { index: usize, d: usize },
    #[error("invalid multidegree: {0}")]
    InvalidMultidegree(String),

    #[error("no image given for x{0}")]
    UnmappedIndex(usize),
    #[error("{kind} takes {expected} arguments, got {got}")]
    Arity { kind: &'static str, expected: usize, got: usize },
    #[error("word {0} is not in the basis")]
    OutOfBasis(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no answer up to the cap {cap}")]
    CapExceeded { cap: usize },
    #[error("{given} samples given, at least {needed} needed")]
    InsufficientSamples { needed: usize, given: usize },
    #[error("interpolation needs {needed} distinct nodes, field has {available}")]
    DegenerateNodes { needed: usize, available: f64 },
    #[error("argument `{0}` is not a monomial; use the evaluation-level interpolation instead")]
    NonMonomialArgument(String),
    #[error("u must not involve x{0}")]
    FreshIndexUsed(usize),

    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal failure: {0}")]
    Internal(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
