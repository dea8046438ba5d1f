use thiserror::Error;

/// Errors reported by the algebra kernel. Verification *failures* are not
/// errors (they are carried in result structs); these are contract
/// violations on inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("context mismatch: {0} generators / {1} parameters vs {2} generators / {3} parameters")]
    ContextMismatch(usize, usize, usize, usize),

    #[error("word of length {0} exceeds the degree cap {1}")]
    DegreeCap(usize, usize),

    #[error("symmetrized product of {0} factors exceeds the cap {1}")]
    SymCap(usize, usize),

    #[error("generator index {0} out of range (alphabet size {1})")]
    BadGenerator(usize, usize),

    #[error("no bracket relation available for generator pair ({0}, {1})")]
    UnknownBracket(usize, usize),

    #[error("operation not defined for the {found} bracket case (requires {required})")]
    WrongCase { required: &'static str, found: &'static str },

    #[error("linear system '{0}' violates the Jacobi identity; rewriting would not be confluent")]
    NotConfluent(String),

    #[error("argument index {0} invalid: {1}")]
    BadRange(usize, &'static str),

    #[error("permutation is not an order-preserving shuffle of the two groups")]
    BadShuffle,

    #[error("pairing matrix shape mismatch: expected {0}x{1}")]
    BadShape(usize, usize),

    #[error("central polynomial {0} has degree {1}, general-case quantization requires degree <= 1")]
    CentralNotAffine(usize, usize),

    #[error("{0}")]
    InvalidInput(String),

    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
