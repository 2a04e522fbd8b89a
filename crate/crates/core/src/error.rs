use thiserror::Error;

use crate::series::Month;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("design matrix is numerically rank deficient")]
    RankDeficient,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate date {0}")]
    DuplicateDate(chrono::NaiveDate),

    #[error("input contains no observations")]
    EmptyFile,

    #[error("no observations in month {0}")]
    Gap(Month),

    #[error("series do not share at least two common months")]
    NoOverlap,

    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("series is constant")]
    ConstantSeries,

    #[error("column {0} is constant")]
    ConstantColumn(usize),

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("invalid process spec: {0}")]
    InvalidSpec(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{section}: {source}")]
    Section {
        section: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn too_short(needed: usize, got: usize) -> Self {
        Error::TooShort { needed, got }
    }

    /// Attach the name of the pipeline stage that produced the error.
    pub fn in_section(self, section: impl Into<String>) -> Self {
        Error::Section {
            section: section.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with any section context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Section { source, .. } => source.root(),
            other => other,
        }
    }
}
