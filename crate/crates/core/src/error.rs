use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("input must have positive degree")]
    ConstantInput,
    #[error("both arguments are constant; the Sylvester matrix is empty")]
    BothConstant,
    #[error("polynomials share a common root")]
    NotCoprime,
    #[error("relation does not hold: {0}")]
    InvalidRelation(String),
    #[error("zero integer argument")]
    ZeroArgument,
    #[error("degree precondition failed: {0}")]
    Degree(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent at byte {offset} exceeds {max}")]
    ExponentTooLarge { offset: usize, max: u64 },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors produced while reading polynomial text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::ExponentTooLarge { .. })
    }

    /// True for violations of the positive-degree / nonzero preconditions.
    pub fn is_degree(&self) -> bool {
        matches!(
            self,
            Error::ConstantInput | Error::BothConstant | Error::ZeroPolynomial | Error::Degree(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
