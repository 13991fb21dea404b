use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator in scalar")]
    ZeroDenominator,
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("{0}")]
    Usage(String),
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("modular gcd did not stabilise after {0} primes")]
    GcdFailed(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("composition is identically zero")]
    DegenerateComposition,
    #[error("point is a base-point of the map")]
    Indeterminate,
    #[error("ambient spaces differ")]
    AmbientMismatch,
    #[error("term budget of {cap} exceeded at iterate {iterate}")]
    Budget { iterate: usize, cap: usize },
    #[error("{0}")]
    Usage(String),
    #[error("invalid map: {0}")]
    Invalid(String),
    #[error("degree certificate inconclusive: {0}")]
    Inconclusive(String),
    #[error("serialization: {0}")]
    Serial(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("invalid embedding parameters: {0}")]
    Spec(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
}
