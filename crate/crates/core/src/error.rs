use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation that needs a field was handed a composite modulus.
    #[error("modulus {0} is not prime")]
    Modulus(u32),

    #[error("modulus {0} is out of range (expected 2..=65536)")]
    ModulusRange(u64),

    #[error("residue {value} is out of range for modulus {modulus}")]
    Residue { value: u64, modulus: u32 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("enumeration needs {needed} steps but the budget is {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("coordinate {0} vanishes on the whole subspace; reduce the family first")]
    Reduction(usize),

    #[error("structure precondition violated: {0}")]
    Structure(String),

    #[error("invalid construction: {0}")]
    Spec(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search stopped after {nodes} nodes (node budget {budget}); best size found so far is {best}")]
    SearchBudget {
        nodes: u64,
        budget: u64,
        best: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }
}
