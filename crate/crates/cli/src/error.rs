use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown reference `{0}`")]
    UnknownReference(String),
    #[error("inadmissible relation: {0}")]
    InadmissibleRelation(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, col {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, col, kind }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("unknown reference `{0}`")]
    UnknownReference(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Knit(#[from] knitting::KnitError),
    #[error(transparent)]
    Shape(#[from] shapes::ShapeError),
    #[error(transparent)]
    Complex(#[from] complexes::ComplexError),
    #[error(transparent)]
    Rep(#[from] quiver_rep::RepError),
    #[error(transparent)]
    Algebra(#[from] path_algebra::AlgebraError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for malformed input or arguments, 1 for failed computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) | CliError::UnknownReference(_) | CliError::Io(_) => 2,
            _ => 1,
        }
    }
}
