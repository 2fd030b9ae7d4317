use thiserror::Error;

/// Errors raised by constructions on finite sets, spans and 2-cells.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("table has length {len} but the domain has size {dom}")]
    LengthMismatch { len: usize, dom: usize },

    #[error("table entry {value} at position {index} is out of range for a codomain of size {cod}")]
    OutOfRange {
        index: usize,
        value: usize,
        cod: usize,
    },

    #[error("labels must be distinct and one per element")]
    BadLabels,

    #[error("function is not a bijection")]
    NotBijection,

    #[error("span is not a map: its left leg is not invertible")]
    NotAMap,

    #[error("not a 2-cell: {0}")]
    NotACell(String),

    #[error("no copoint: the legs of the endospan differ")]
    NoCopoint,

    #[error("no mediating map: {0}")]
    NoMediator(String),

    #[error("canonical identification is not determined: {0}")]
    Ambiguous(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
