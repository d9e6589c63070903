use thiserror::Error;

use crate::format::FormatError;
use crate::fp1::Fp1Error;
use crate::rees::ReesError;
use crate::resolution::ModuleError;
use crate::semigroup::SemigroupError;
use crate::transfer::TransferError;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Rees(#[from] ReesError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Fp1(#[from] Fp1Error),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
