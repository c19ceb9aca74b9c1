//! File formats, configuration, and the experiment runner around
//! `sentivote-core`: CSV corpora, emotion-mapping files, model persistence,
//! TOML experiment configs, grid execution with report output, and the
//! `sentivote` command-line interface.

pub mod cli;
pub mod config;
pub mod corpus_csv;
pub mod mapping;
pub mod model_file;
pub mod runner;

pub use sentivote_core as core;

use std::path::PathBuf;

/// Errors from file handling and configuration on top of the core errors.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// A malformed corpus or data file, with a 1-based row number where one
    /// applies (0 means the header or the file as a whole).
    #[error("{}: row {row}: {message}", path.display())]
    Row {
        path: PathBuf,
        row: u64,
        message: String,
    },
    #[error("{}: {message}", path.display())]
    File { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] sentivote_core::Error),
    /// Every configuration problem found, one per line.
    #[error("invalid configuration:\n{0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn row(path: impl Into<PathBuf>, row: u64, message: impl Into<String>) -> Error {
        Error::Row {
            path: path.into(),
            row,
            message: message.into(),
        }
    }

    pub(crate) fn file(path: impl Into<PathBuf>, message: impl Into<String>) -> Error {
        Error::File {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
