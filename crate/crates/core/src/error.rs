use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must have at least 2 letters, got {0}")]
    AlphabetTooSmall(usize),

    #[error("duplicate alphabet symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("missing transition for state `{state}` on letter `{letter}`")]
    MissingTransition { state: String, letter: String },

    #[error("output row of state `{0}` is not a permutation of the alphabet")]
    NonBijectiveOutput(String),

    #[error("duplicate state `{0}`")]
    DuplicateState(String),

    #[error("duplicate transition for state `{state}` on letter `{letter}`")]
    DuplicateTransition { state: String, letter: String },

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),

    #[error("letter index {letter} out of range for alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },

    #[error("automata are over different alphabets")]
    AlphabetMismatch,

    #[error("unknown builtin family `{0}`")]
    UnknownFamily(String),

    #[error("materialization depth {depth} is too small for processing length {requested}")]
    DepthTooSmallForRequestedLength { depth: usize, requested: usize },

    #[error("automaton is a depth-bounded materialization sound only up to length {horizon}, but {requested} was requested")]
    NotMaterializable { horizon: usize, requested: String },

    #[error("no unconditional cycle is reached within {level} steps")]
    NotApplicable { level: usize },

    #[error("cycle bound {bound} is smaller than the maximal reachable cycle length {required}")]
    CycleBoundTooSmall { bound: usize, required: usize },

    #[error("period bound {bound} is not a multiple of reachable cycle length {length}")]
    PeriodBoundInvalid { bound: usize, length: usize },

    #[error("block factor {0} is smaller than 8")]
    BlockFactorTooSmall(u64),

    #[error("word `{0}` is not assigned to any piece")]
    PartitionNotTotal(String),

    #[error("word `{0}` is assigned to more than one piece")]
    PartitionOverlap(String),

    #[error("at least one transformation is required")]
    NoTransformations,

    #[error("{pieces} pieces given for {transformations} transformations")]
    PieceCountMismatch {
        pieces: usize,
        transformations: usize,
    },

    #[error("word `{word}` has length {found}, expected {expected}")]
    WrongLength {
        word: String,
        expected: usize,
        found: usize,
    },

    #[error("periodic word has an empty period")]
    EmptyPeriod,

    #[error("word cannot be presented at level {0}")]
    InvalidPresentation(usize),

    #[error("sample word period length {period} does not divide {bound}")]
    SampleOutOfClass { period: usize, bound: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
