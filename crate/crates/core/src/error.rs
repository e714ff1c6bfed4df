use thiserror::Error;

#[derive(Debug, Error)]
pub enum BraidError {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("letter index {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("need at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("invalid strand pair ({i}, {j}): need 1 <= i < j <= {strands}")]
    BadStrandPair { i: usize, j: usize, strands: usize },
    #[error("empty sampling alphabet")]
    EmptyAlphabet,
    #[error("congruence level must be >= 2, got {0}")]
    InvalidLevel(u64),
    #[error("word of length {0} exceeds the configured cap {1}")]
    WordTooLong(usize, usize),
    #[error("not a pure braid: strand permutation is nontrivial")]
    NotPure,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("generator matrix is not invertible mod {0}")]
    NonInvertibleGenerator(u64),
    #[error("group closure exceeded cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("subgroup is not contained in the ambient group")]
    NotASubgroup,
    #[error("order mismatch: |G| = {g}, |K| = {k}, q = {q}")]
    BadIndex { g: usize, k: usize, q: usize },
    #[error("complement probe not exhaustive for index {0} (pair-generated search covers q <= 6)")]
    ProbeNotExhaustive(usize),
    #[error("theorem requires odd level, got {0}")]
    EvenLevel(u64),
    #[error("{0}")]
    Unsupported(String),
    #[error("cannot parse word letter {0:?}")]
    BadWordToken(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, BraidError>;
