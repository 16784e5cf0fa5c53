use std::path::PathBuf;

use thiserror::Error;

use crate::schedules::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("missing file: {0}")]
    MissingFile(PathBuf),
    #[error("invalid corpus manifest {path}: {message}")]
    InvalidManifest { path: PathBuf, message: String },
    #[error("language `{lang}` has {actual} lines, expected {expected}")]
    AlignmentMismatch {
        lang: String,
        expected: usize,
        actual: usize,
    },
    #[error("duplicate line id `{0}`")]
    DuplicateLineId(String),
    #[error("duplicate language `{0}`")]
    DuplicateLanguage(String),
    #[error("unknown language `{0}`")]
    UnknownLanguage(String),
    #[error("span `{0}` selects no lines")]
    EmptySpan(String),
    #[error("invalid span `{0}`")]
    InvalidSpan(String),
    #[error("n-gram order {0} outside 1..=8")]
    InvalidOrder(usize),
    #[error("requested n-gram order {requested} exceeds table order {available}")]
    OrderExceedsTable { requested: usize, available: usize },
    #[error("cannot train a smoothed language model on an empty training set")]
    EmptyTrainingSet,
    #[error("line {0} is in the chosen set")]
    LineInChosenSet(usize),
    #[error("budget must be positive")]
    InvalidBudget,
    #[error("unknown line `{0}`")]
    UnknownLine(String),
    #[error("reference language list is empty")]
    NoReferenceLanguages,
    #[error("unknown method `{0}` (expected one of: {methods})", methods = crate::selection::METHOD_NAMES.join(", "))]
    UnknownMethod(String),
    #[error("unknown pool policy `{0}` (expected L, F, P or N)")]
    UnknownPolicy(String),
    #[error("invalid language metadata: {0}")]
    InvalidMetadata(String),
    #[error("language `{code}` lacks the `{field}` field required by this pool policy")]
    InsufficientMetadata { code: String, field: &'static str },
    #[error("score matrix has no row for language `{0}`")]
    MissingRow(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("candidate list is empty")]
    EmptyCandidateList,
    #[error("ranking was built on corpus {found}, expected {expected}")]
    CorpusMismatch { expected: String, found: String },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(Violation),
    #[error("unknown schedule `{0}` (valid labels: A-X)")]
    UnknownSchedule(String),
    #[error("malformed ranking file, line {line}: {message}")]
    RankingFormat { line: usize, message: String },
    #[error("malformed manifest: {0}")]
    ManifestFormat(String),
    #[error("invalid entity lexicon: {0}")]
    InvalidLexicon(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        let path = path.into();
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::MissingFile(path)
        } else {
            Error::Io { path, source }
        }
    }
}
