//! Crate-wide error type with stable diagnostic codes.
//!
//! Every variant maps to a fixed `E_*` code string via [`Error::code`] so
//! that command-line callers and test harnesses can assert on failures
//! without parsing human-readable messages.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed line: {reason}")]
    MalformedLine {
        path: PathBuf,
        line: u64,
        reason: String,
    },

    #[error("{path}:{line}: unknown trial label '{token}'")]
    UnknownLabel {
        path: PathBuf,
        line: u64,
        token: String,
    },

    #[error("duplicate trial ({enroll}, {test})")]
    DuplicateTrial { enroll: String, test: String },

    #[error("non-finite score for trial ({enroll}, {test})")]
    NonFiniteScore { enroll: String, test: String },

    #[error("non-finite embedding component for utterance '{utt}'")]
    NonFiniteComponent { utt: String },

    #[error("embedding dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero-norm embedding vector for utterance '{utt}'")]
    ZeroNormVector { utt: String },

    #[error("duplicate utterance '{utt}' in embedding table")]
    DuplicateUtterance { utt: String },

    #[error("duplicate enrollment id '{enroll}'")]
    DuplicateEnrollment { enroll: String },

    #[error("enrollment id '{enroll}' has no utterances")]
    EmptyEnrollmentList { enroll: String },

    #[error("duplicate dataset name '{name}' in manifest")]
    DuplicateDatasetName { name: String },

    #[error("malformed manifest: {reason}")]
    MalformedManifest { reason: String },

    #[error("trial ({enroll}, {test}) has no score")]
    MissingScore { enroll: String, test: String },

    #[error("score for ({enroll}, {test}) matches no trial")]
    UnmatchedScore { enroll: String, test: String },

    #[error("enrollment id '{enroll}' not present in enrollment map")]
    UnknownEnrollment { enroll: String },

    #[error("utterance '{utt}' not present in embedding table")]
    UnknownUtterance { utt: String },

    #[error("need at least 2 scores to compute normalization statistics, got {n}")]
    TooFewScores { n: usize },

    #[error("degenerate score distribution: standard deviation below 1e-12")]
    DegenerateStd,

    #[error("score sets disagree on trial keys: {detail}")]
    KeyMismatch { detail: String },

    #[error("invalid fusion weights: {reason}")]
    InvalidWeights { reason: String },

    #[error("labeled scores contain only one class; need both bonafide and spoof")]
    SingleClassInput,

    #[error("score set is empty")]
    EmptyScoreSet,

    #[error("no scores labeled '{class_name}'")]
    EmptyClass { class_name: String },

    #[error("invalid detection cost parameters: {reason}")]
    InvalidParams { reason: String },

    #[error("degenerate detection cost parameters: {reason}")]
    DegenerateParams { reason: String },

    #[error("empty input")]
    EmptyInput,

    #[error("invalid generator config: {reason}")]
    InvalidConfig { reason: String },
}

impl Error {
    /// Stable machine-readable diagnostic code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Io { .. } => "E_IO",
            Error::MalformedLine { .. } => "E_MALFORMED_LINE",
            Error::UnknownLabel { .. } => "E_UNKNOWN_LABEL",
            Error::DuplicateTrial { .. } => "E_DUPLICATE_TRIAL",
            Error::NonFiniteScore { .. } => "E_NON_FINITE_SCORE",
            Error::NonFiniteComponent { .. } => "E_NON_FINITE_COMPONENT",
            Error::DimensionMismatch { .. } => "E_DIMENSION_MISMATCH",
            Error::ZeroNormVector { .. } => "E_ZERO_NORM_VECTOR",
            Error::DuplicateUtterance { .. } => "E_DUPLICATE_UTTERANCE",
            Error::DuplicateEnrollment { .. } => "E_DUPLICATE_ENROLLMENT",
            Error::EmptyEnrollmentList { .. } => "E_EMPTY_ENROLLMENT_LIST",
            Error::DuplicateDatasetName { .. } => "E_DUPLICATE_DATASET_NAME",
            Error::MalformedManifest { .. } => "E_MALFORMED_MANIFEST",
            Error::MissingScore { .. } => "E_MISSING_SCORE",
            Error::UnmatchedScore { .. } => "E_UNMATCHED_SCORE",
            Error::UnknownEnrollment { .. } => "E_UNKNOWN_ENROLLMENT",
            Error::UnknownUtterance { .. } => "E_UNKNOWN_UTTERANCE",
            Error::TooFewScores { .. } => "E_TOO_FEW_SCORES",
            Error::DegenerateStd => "E_DEGENERATE_STD",
            Error::KeyMismatch { .. } => "E_KEY_MISMATCH",
            Error::InvalidWeights { .. } => "E_INVALID_WEIGHTS",
            Error::SingleClassInput => "E_SINGLE_CLASS_INPUT",
            Error::EmptyScoreSet => "E_EMPTY_SCORE_SET",
            Error::EmptyClass { .. } => "E_EMPTY_CLASS",
            Error::InvalidParams { .. } => "E_INVALID_PARAMS",
            Error::DegenerateParams { .. } => "E_DEGENERATE_PARAMS",
            Error::EmptyInput => "E_EMPTY_INPUT",
            Error::InvalidConfig { .. } => "E_INVALID_CONFIG",
        }
    }
}
