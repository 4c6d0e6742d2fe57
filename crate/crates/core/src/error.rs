use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed lasso `{0}`: expected `<prefix>:<period>` with a nonempty period")]
    MalformedLasso(String),

    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("transition monoid exceeds the cap of {cap} elements")]
    MonoidTooLarge { cap: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("vertex `{0}` has no outgoing edge")]
    SinkVertex(String),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("not Eve-only: {0}")]
    NotEveOnly(String),

    #[error("positional search space of {size} choice functions exceeds the limit of {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("lassos {left} and {right} are incomparable (u={u:?}, u'={u_prime:?}); the language is not positional")]
    IncomparableLassos {
        left: String,
        right: String,
        u: String,
        u_prime: String,
    },

    #[error("invalid merge plan: {0}")]
    InvalidPlan(String),

    #[error("merging memory state {drop} into {keep} broke the strategy (losing play {play})")]
    MergeBrokeWinning {
        keep: usize,
        drop: usize,
        play: String,
    },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
