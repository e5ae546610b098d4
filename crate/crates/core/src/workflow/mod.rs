//! Submissions and moderation, grade groups, exercise planning and
//! per-student contribution logs.

pub mod grades;
pub mod plan;
pub mod portal;
pub mod student;
pub mod submission;

use thiserror::Error;

use crate::content::{ContentError, PageId, ValidationReport};

pub use grades::{assign_group, derive_t, Grade, Group, PointScale};
pub use plan::{plan_exercises, plan_exercises_with, parse_percentages, ExercisePlan, ProblemType, PropensityMatrix};
pub use portal::{apply_submission, Portal, PublishOutcome};
pub use student::{contribution_report, parse_roster, ContributionReport, GroupChange, LogEntry, Outcome, StudentRecord};
pub use submission::{Action, Actor, HistoryEntry, Role, Submission, SubmissionState, SubmissionTarget};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorkflowError {
    #[error("cannot {action} a submission in state {from}")]
    IllegalTransition { from: SubmissionState, action: Action },
    #[error("role {role} may not {action}")]
    Forbidden { role: Role, action: String },
    #[error("payload does not validate: {}", summarize(.0))]
    ValidationFailed(ValidationReport),
    #[error("payload rejected: {0}")]
    Payload(ContentError),
    #[error("invalid grade `{0}`")]
    InvalidGrade(String),
    #[error("no graded relevant subjects")]
    NoRelevantGrades,
    #[error("invalid percentages: {0}")]
    InvalidPercentages(String),
    #[error("invalid total: {0}")]
    InvalidTotal(String),
    #[error("unknown student `{0}`")]
    UnknownStudent(String),
    #[error("unknown submission {0}")]
    UnknownSubmission(u64),
    #[error("unknown page {0}")]
    UnknownPage(PageId),
    #[error("page {0} already exists")]
    PageExists(PageId),
    #[error("roster line {line}: {message}")]
    Roster { line: usize, message: String },
}

fn summarize(report: &ValidationReport) -> String {
    let parts: Vec<String> = report.findings.iter().map(|f| f.to_string()).collect();
    parts.join("; ")
}

impl WorkflowError {
    /// Stable machine-readable tag.
    pub fn reason(&self) -> &'static str {
        match self {
            WorkflowError::IllegalTransition { .. } => "illegal-transition",
            WorkflowError::Forbidden { .. } => "forbidden-role",
            WorkflowError::ValidationFailed(_) => "validation-failed",
            WorkflowError::Payload(_) => "invalid-payload",
            WorkflowError::InvalidGrade(_) => "invalid-grade",
            WorkflowError::NoRelevantGrades => "no-relevant-grades",
            WorkflowError::InvalidPercentages(_) => "invalid-percentages",
            WorkflowError::InvalidTotal(_) => "invalid-total",
            WorkflowError::UnknownStudent(_) => "unknown-student",
            WorkflowError::UnknownSubmission(_) => "unknown-submission",
            WorkflowError::UnknownPage(_) => "unknown-page",
            WorkflowError::PageExists(_) => "page-exists",
            WorkflowError::Roster { .. } => "invalid-roster",
        }
    }
}
