use thiserror::Error;

/// Errors raised by k-graph construction and the covering/group machinery.
///
/// Every message starts with the variant name so front ends can report the
/// error kind verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Malformed: {0}")]
    Malformed(String),

    #[error("BadSquare: square ({}) {reason}", .square.join(","))]
    BadSquare { square: Vec<String>, reason: String },

    #[error("NotBijective: colors ({colors}): {detail}")]
    NotBijective { colors: String, detail: String },

    #[error("FactorizationFailure: paths [{}] and [{}] are equivalent but have the same color order",
        .first.join(","), .second.join(","))]
    FactorizationFailure { first: Vec<String>, second: Vec<String> },

    #[error("NotComposable: junction after position {index}")]
    NotComposable { index: usize },

    #[error("EmptyPath: use the identity morphism for the empty path")]
    EmptyPath,

    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(String),

    #[error("NotConnected: {0}")]
    NotConnected(String),

    #[error("UnknownVertex: {0}")]
    UnknownVertex(String),

    #[error("UnknownEdge: {0}")]
    UnknownEdge(String),

    #[error("TargetMismatch: {0}")]
    TargetMismatch(String),

    #[error("CocycleInvalid: square ({}) fails", .square.join(","))]
    CocycleInvalid { square: Vec<String> },

    #[error("CosetOverflow: more than {limit} live cosets")]
    CosetOverflow { limit: usize },

    #[error("NotFunctorial: {0}")]
    NotFunctorial(String),

    #[error("NotLocallyInjective: vertex {vertex}, color {color}, {direction}")]
    NotLocallyInjective { vertex: String, color: usize, direction: &'static str },

    #[error("NotLocallySurjective: vertex {vertex}, color {color}, {direction}")]
    NotLocallySurjective { vertex: String, color: usize, direction: &'static str },

    #[error("NotSurjective: {0}")]
    NotSurjective(String),

    #[error("SquareBroken: square ({}) has no image square", .square.join(","))]
    SquareBroken { square: Vec<String> },

    #[error("InvalidAction: {0}")]
    InvalidAction(String),

    #[error("BasepointMismatch: {0}")]
    BasepointMismatch(String),

    #[error("NotFree: vertex {0} is fixed by a non-identity element")]
    NotFree(String),

    #[error("NotClosed: {0}")]
    NotClosed(String),

    #[error("CrossCheckFailed: {0}")]
    CrossCheckFailed(String),
}

impl Error {
    /// The bare variant name, e.g. `"CosetOverflow"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "Malformed",
            Error::BadSquare { .. } => "BadSquare",
            Error::NotBijective { .. } => "NotBijective",
            Error::FactorizationFailure { .. } => "FactorizationFailure",
            Error::NotComposable { .. } => "NotComposable",
            Error::EmptyPath => "EmptyPath",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::NotConnected(_) => "NotConnected",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::TargetMismatch(_) => "TargetMismatch",
            Error::CocycleInvalid { .. } => "CocycleInvalid",
            Error::CosetOverflow { .. } => "CosetOverflow",
            Error::NotFunctorial(_) => "NotFunctorial",
            Error::NotLocallyInjective { .. } => "NotLocallyInjective",
            Error::NotLocallySurjective { .. } => "NotLocallySurjective",
            Error::NotSurjective(_) => "NotSurjective",
            Error::SquareBroken { .. } => "SquareBroken",
            Error::InvalidAction(_) => "InvalidAction",
            Error::BasepointMismatch(_) => "BasepointMismatch",
            Error::NotFree(_) => "NotFree",
            Error::NotClosed(_) => "NotClosed",
            Error::CrossCheckFailed(_) => "CrossCheckFailed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
