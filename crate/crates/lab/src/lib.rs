//! Command-line laboratory for graded image computations: file formats, seeded corpora,
//! JSON reports and the acceptance suite behind `selftest`.

pub mod acceptance;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod formats;
pub mod report;

use graded_image_core::analysis::AnalysisError;

/// Exit status of a command.
pub mod exit {
    pub const OK: u8 = 0;
    /// Not an identity, or a failed self-test.
    pub const NEGATIVE: u8 = 1;
    pub const USAGE: u8 = 2;
    /// No theorem covers the input, or the grading table is corrupt.
    pub const UNSUPPORTED: u8 = 3;
    /// A prediction disagrees with computation, or a central polynomial was found.
    pub const MISMATCH: u8 = 4;
    pub const HYPOTHESIS: u8 = 5;
    /// A search ran out of budget without a verdict.
    pub const INCONCLUSIVE: u8 = 6;
}

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    #[error("corrupt grading: {0}")]
    Grading(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl LabError {
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Usage(_) | LabError::Io { .. } => exit::USAGE,
            LabError::Grading(_) => exit::UNSUPPORTED,
            LabError::Analysis(e) => match e {
                AnalysisError::Unsupported(_) => exit::UNSUPPORTED,
                AnalysisError::MismatchBug(_) => exit::MISMATCH,
                AnalysisError::HypothesisViolation(_) => exit::HYPOTHESIS,
                AnalysisError::SearchSpaceTooLarge { .. } => exit::INCONCLUSIVE,
                _ => exit::USAGE,
            },
        }
    }
}
