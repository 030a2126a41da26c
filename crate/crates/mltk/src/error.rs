use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use mltk_core::{DatasetError, EvalError, PartitionError};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax or content error at a 1-based line and column of a text file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}:{error}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        error: ParseError,
    },
    #[error("{}: {source}", path.display())]
    Dataset {
        path: PathBuf,
        #[source]
        source: DatasetError,
    },
    #[error("{}: no {what} found (pass it explicitly)", data.display())]
    MissingCompanion { what: &'static str, data: PathBuf },
    #[error("{}: cannot tell the file format, pass it explicitly", .0.display())]
    UnknownFormat(PathBuf),
    #[error("refusing to overwrite {}", .0.display())]
    WouldOverwrite(PathBuf),
    #[error("no citation available for `{0}`")]
    NoCitation(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        Error::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    pub(crate) fn parse(path: impl AsRef<Path>, error: ParseError) -> Self {
        Error::Parse {
            path: path.as_ref().to_path_buf(),
            error,
        }
    }

    pub(crate) fn dataset(path: impl AsRef<Path>, source: DatasetError) -> Self {
        Error::Dataset {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    /// True for problems with the input data rather than with how the tool was invoked.
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::Invalid(_))
    }
}
