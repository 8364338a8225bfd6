//! Command implementations behind the `gwzeta` binary.

pub mod commands;
pub mod report;
pub mod spec;
pub mod suites;

use gwzeta::varieties::{IngestError, VarietyError};
use gwzeta::zeta::ZetaError;
use thiserror::Error;

pub use commands::{Format, Options, Outcome};
pub use spec::{parse, ParseError, VarietySpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_MISSING: i32 = 4;
pub const EXIT_FIT: i32 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

impl From<gwzeta::GwError> for CliError {
    fn from(e: gwzeta::GwError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn variety_exit_code(e: &VarietyError) -> i32 {
    match e {
        VarietyError::NegativeCount { .. } | VarietyError::InconsistentWeilData { .. } => EXIT_INCONSISTENT,
        _ => EXIT_PARSE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Usage(_) | CliError::Parse(_) => EXIT_PARSE,
            CliError::Ingest(IngestError::Variety(e)) | CliError::Variety(e) => variety_exit_code(e),
            CliError::Ingest(_) => EXIT_PARSE,
            CliError::Zeta(e) => match e {
                ZetaError::Variety(v) => variety_exit_code(v),
                ZetaError::InconsistentCounts { .. } | ZetaError::RankMismatch { .. } => EXIT_INCONSISTENT,
                ZetaError::NotProper(_)
                | ZetaError::NoCellData(_)
                | ZetaError::EvenCharacteristic(_)
                | ZetaError::EvenDimension(_) => EXIT_MISSING,
                ZetaError::NotDlogRational(_) | ZetaError::InsufficientOrder { .. } => EXIT_FIT,
                ZetaError::Series(_) | ZetaError::Gw(_) | ZetaError::FieldMismatch { .. } => EXIT_PARSE,
            },
        }
    }
}
