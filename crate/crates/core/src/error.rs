use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed JSON: {source}")]
    MalformedLine {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: missing or invalid field `{field}`")]
    MissingField { line: usize, field: &'static str },
    #[error("document {id}: invalid date {date:?}")]
    InvalidDate { id: String, date: String },
    #[error("duplicate document id {0}")]
    DuplicateId(String),
    #[error("document {id}: invalid tokens: {reason}")]
    InvalidTokens { id: String, reason: String },
    #[error("document {0} is not tagged")]
    Untagged(String),
    #[error("phrase has no non-punctuation tokens")]
    EmptyPhrase,
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("empty query")]
    EmptyQuery,
    #[error("invalid time range: {start} is after {end}")]
    InvalidRange {
        start: chrono::NaiveDate,
        end: chrono::NaiveDate,
    },
    #[error("selection has no subject phrase")]
    MissingSubject,
    #[error("unknown phrase {0:?}")]
    UnknownPhrase(String),
    #[error("unknown document {0:?}")]
    UnknownDocument(String),
    #[error("negative page {0}")]
    NegativePage(i64),
    #[error("query has no hits in document {0}")]
    NoHits(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("missing index manifest in {0}")]
    MissingManifest(PathBuf),
    #[error("index format version {found} is not supported by this reader (version {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("corrupt index: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
