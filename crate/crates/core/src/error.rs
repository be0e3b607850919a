use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cycle support enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("right congruence has infinite index: {0}")]
    InfiniteIndex(String),
    #[error("unsupported for this condition: {0}")]
    Unsupported(String),
    #[error("precondition `{check}` failed: {detail}")]
    Precondition { check: &'static str, detail: String },
    #[error("internal consistency violated: {0}")]
    Internal(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |e| Error::Stage {
            stage,
            source: Box::new(e),
        }
    }

    /// The innermost error, looking through stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// True when the root cause is an exceeded resource cap.
    pub fn is_cap(&self) -> bool {
        matches!(self.root(), Error::CapExceeded { .. } | Error::SizeCap(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
