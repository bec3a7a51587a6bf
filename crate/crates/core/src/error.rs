use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CellError {
    #[error("domain/codomain mismatch in {context}")]
    Mismatch { context: String },

    #[error("coproduct of an empty sequence")]
    EmptyCoproduct,

    #[error("cocone does not commute over the span: {0}")]
    NonCommutingCocone(String),

    #[error("no morphism satisfies {0}")]
    NoSolution(String),

    #[error("{0} is not unique")]
    NotUnique(String),

    #[error("search budget of {budget} candidate assignments exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl CellError {
    pub fn mismatch(context: impl Into<String>) -> Self {
        CellError::Mismatch { context: context.into() }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, CellError::BudgetExhausted { .. })
    }
}

pub type Result<T, E = CellError> = std::result::Result<T, E>;
