use std::io;

use thiserror::Error;

use crate::conllu::ValidationIssue;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown UPOS tag {0:?}")]
    BadUpos(String),

    #[error("malformed XPOS sequence {0:?}")]
    BadXposSeq(String),

    #[error("corpus has no XPOS layer on its plain tokens")]
    MissingLayer,

    #[error("construction table is empty")]
    EmptyTable,

    #[error("duplicate key {key} on rows {first} and {second}")]
    DuplicateKey {
        key: String,
        first: usize,
        second: usize,
    },

    #[error("mapping table row {row}: {message}")]
    BadTableRow { row: usize, message: String },

    #[error("corpora do not line up: {0}")]
    ShapeMismatch(String),

    #[error("sentence {sent_id}: gold and system text differ")]
    TextMismatch { sent_id: String },

    #[error("corpus failed validation with {} issue(s)", .0.len())]
    InvalidCorpus(Vec<ValidationIssue>),

    #[error("invalid rule config: {0}")]
    BadConfig(String),

    #[error("invalid split ratios: {0}")]
    BadSplit(String),

    #[error("item {0} already has a decision")]
    Conflict(String),

    #[error("no review item {0}")]
    NoSuchItem(String),

    #[error("invalid decision: {0}")]
    BadDecision(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE_ERROR",
            Error::BadUpos(_) => "BAD_UPOS",
            Error::BadXposSeq(_) => "BAD_XPOS",
            Error::MissingLayer => "MISSING_LAYER",
            Error::EmptyTable => "EMPTY_TABLE",
            Error::DuplicateKey { .. } => "DUPLICATE_KEY",
            Error::BadTableRow { .. } => "BAD_TABLE_ROW",
            Error::ShapeMismatch(_) => "SHAPE_MISMATCH",
            Error::TextMismatch { .. } => "TEXT_MISMATCH",
            Error::InvalidCorpus(_) => "INVALID_CORPUS",
            Error::BadConfig(_) => "BAD_CONFIG",
            Error::BadSplit(_) => "BAD_SPLIT",
            Error::Conflict(_) => "CONFLICT",
            Error::NoSuchItem(_) => "NOT_FOUND",
            Error::BadDecision(_) => "BAD_DECISION",
            Error::Io(e) if e.kind() == io::ErrorKind::NotFound => "FILE_NOT_FOUND",
            Error::Io(_) => "IO_ERROR",
        }
    }
}
