use thiserror::Error;

/// Errors raised by the toolkit. Mathematical negative answers are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at assignment")]
    Pole,
    #[error("invalid parameter ring: {0}")]
    Ring(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("{0}")]
    Parse(String),
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error("degree {got} relation where degree 2 is required")]
    NotQuadratic { got: usize },
    #[error("relations are linearly dependent")]
    DependentRelations,
    #[error("input outside supported size: {0}")]
    TooLarge(String),
    #[error("p not on point scheme")]
    NotOnPointScheme,
    #[error("σ not unique at p (fat point locus)")]
    SigmaNotUnique,
    #[error("point scheme is not a determinantal hypersurface; use graph membership instead")]
    NotDeterminantal,
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
