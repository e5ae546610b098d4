//! Portal content: logical pages, the prerequisite corpus, validation,
//! relevance, search and the fielded interchange format.

pub mod corpus;
pub mod fielded;
pub mod page;
pub mod relevance;
pub mod search;
pub mod seed;
pub mod validate;

use thiserror::Error;

pub use corpus::{Corpus, CorpusTerm};
pub use fielded::{export_page, import_page, parse_records, Record, Tag};
pub use page::{
    ColorCode, Construction, LogicalPage, PageId, PageIndex, PageKind, PageStatus, PrereqType, PrerequisiteBox,
    Property, Reference, Remark,
};
pub use relevance::{relevance, SyllabusMap, SyllabusUnit};
pub use search::{search, SearchHit, SearchIndex};
pub use validate::{backward_links, validate_page, Finding, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContentError {
    #[error("invalid page id `{0}`")]
    InvalidPageId(String),
    #[error("invalid {kind} `{value}`")]
    InvalidKeyword { kind: &'static str, value: String },
    #[error("invalid corpus term `{term}`: {reason}")]
    InvalidTerm { term: String, reason: String },
    #[error("duplicate corpus term `{0}`")]
    DuplicateTerm(String),
    #[error("unknown term `{0}`")]
    UnknownTerm(String),
    #[error("line {line}{}: {message}", tag.as_ref().map(|t| format!(" (%{t})")).unwrap_or_default())]
    Parse { line: usize, tag: Option<String>, message: String },
    #[error("invalid syllabus: {0}")]
    InvalidSyllabus(String),
}
