//! Submission state machine with an append-only audit history.
//!
//! ```text
//! Submitted --start-review--> InReview --approve--> Approved --publish--> Published
//!     ^                          |  \
//!     |                          |   `--reject--> Rejected
//!     `--resubmit-- ChangesRequested <--request-changes
//! ```
//!
//! A failed publish leaves the submission Approved and records a
//! `publish-failed` entry.

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::WorkflowError;
use crate::content::{PageId, Tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Student,
    Instructor,
    Moderator,
    Admin,
}

impl Role {
    pub const ALL: [Role; 4] = [Role::Student, Role::Instructor, Role::Moderator, Role::Admin];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Student => "student",
            Role::Instructor => "instructor",
            Role::Moderator => "moderator",
            Role::Admin => "admin",
        }
    }

    /// Roles are ordered; a role may do whatever the roles below it may.
    pub fn at_least(self, other: Role) -> bool {
        self >= other
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown role `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Actor {
    pub id: String,
    pub role: Role,
}

impl Actor {
    pub fn new(id: impl Into<String>, role: Role) -> Self {
        Self { id: id.into(), role }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubmissionState {
    Submitted,
    InReview,
    ChangesRequested,
    Approved,
    Rejected,
    Published,
}

impl SubmissionState {
    pub const ALL: [SubmissionState; 6] = [
        SubmissionState::Submitted,
        SubmissionState::InReview,
        SubmissionState::ChangesRequested,
        SubmissionState::Approved,
        SubmissionState::Rejected,
        SubmissionState::Published,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SubmissionState::Submitted => "Submitted",
            SubmissionState::InReview => "InReview",
            SubmissionState::ChangesRequested => "ChangesRequested",
            SubmissionState::Approved => "Approved",
            SubmissionState::Rejected => "Rejected",
            SubmissionState::Published => "Published",
        }
    }

    pub fn is_terminal(self) -> bool {
        matches!(self, SubmissionState::Rejected | SubmissionState::Published)
    }
}

impl fmt::Display for SubmissionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SubmissionState {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SubmissionState::ALL
            .into_iter()
            .find(|st| st.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown state `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    Submit,
    #[serde(rename = "start", alias = "start-review")]
    StartReview,
    RequestChanges,
    Approve,
    Reject,
    Resubmit,
    Publish,
    PublishFailed,
}

impl Action {
    pub const ALL: [Action; 8] = [
        Action::Submit,
        Action::StartReview,
        Action::RequestChanges,
        Action::Approve,
        Action::Reject,
        Action::Resubmit,
        Action::Publish,
        Action::PublishFailed,
    ];

    /// The review actions accepted by `POST /submissions/{id}/review`.
    pub const REVIEW: [Action; 4] = [Action::StartReview, Action::RequestChanges, Action::Approve, Action::Reject];

    pub fn as_str(self) -> &'static str {
        match self {
            Action::Submit => "submit",
            Action::StartReview => "start",
            Action::RequestChanges => "request-changes",
            Action::Approve => "approve",
            Action::Reject => "reject",
            Action::Resubmit => "resubmit",
            Action::Publish => "publish",
            Action::PublishFailed => "publish-failed",
        }
    }

    /// Minimum role for the action. Submitting is open to every role;
    /// resubmission is further limited to the author.
    pub fn required_role(self) -> Role {
        match self {
            Action::Submit | Action::Resubmit => Role::Student,
            _ => Role::Moderator,
        }
    }

    /// State reached by taking the action in `from`; `None` where the machine
    /// has no such edge.
    pub fn transition(self, from: SubmissionState) -> Option<SubmissionState> {
        use SubmissionState::*;
        match (from, self) {
            (Submitted, Action::StartReview) => Some(InReview),
            (InReview, Action::RequestChanges) => Some(ChangesRequested),
            (InReview, Action::Approve) => Some(Approved),
            (InReview, Action::Reject) => Some(Rejected),
            (ChangesRequested, Action::Resubmit) => Some(Submitted),
            (Approved, Action::Publish) => Some(Published),
            (Approved, Action::PublishFailed) => Some(Approved),
            _ => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "start-review" => Ok(Action::StartReview),
            _ => Action::ALL
                .into_iter()
                .find(|a| a.as_str() == s)
                .ok_or_else(|| format!("unknown action `{s}`")),
        }
    }
}

/// What a submission changes: attributes of an existing page (optionally
/// restricted to one field tag), or a whole new page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubmissionTarget {
    Page {
        id: PageId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        attribute: Option<String>,
    },
    NewPage,
}

impl SubmissionTarget {
    pub fn attribute_tag(&self) -> Result<Option<Tag>, WorkflowError> {
        match self {
            SubmissionTarget::Page {
                attribute: Some(a), ..
            } => a
                .parse::<Tag>()
                .map(Some)
                .map_err(WorkflowError::Payload),
            _ => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub actor: String,
    pub role: Role,
    pub action: Action,
    pub at: DateTime<Utc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Payload carried by submit and resubmit entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Submission {
    pub id: u64,
    pub author: String,
    pub target: SubmissionTarget,
    payload: String,
    state: SubmissionState,
    history: Vec<HistoryEntry>,
}

impl Submission {
    pub fn new(
        id: u64,
        author: &Actor,
        target: SubmissionTarget,
        payload: impl Into<String>,
        at: DateTime<Utc>,
        note: Option<String>,
    ) -> Self {
        let payload = payload.into();
        Self {
            id,
            author: author.id.clone(),
            target,
            payload: payload.clone(),
            state: SubmissionState::Submitted,
            history: vec![HistoryEntry {
                actor: author.id.clone(),
                role: author.role,
                action: Action::Submit,
                at,
                note,
                payload: Some(payload),
            }],
        }
    }

    pub fn state(&self) -> SubmissionState {
        self.state
    }

    pub fn payload(&self) -> &str {
        &self.payload
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    /// Checks role and state without changing anything.
    pub fn check(&self, actor: &Actor, action: Action) -> Result<SubmissionState, WorkflowError> {
        if action == Action::Submit {
            return Err(WorkflowError::IllegalTransition {
                from: self.state,
                action,
            });
        }
        let role_ok = actor.role.at_least(action.required_role())
            && (action != Action::Resubmit || actor.id == self.author);
        if !role_ok {
            return Err(WorkflowError::Forbidden {
                role: actor.role,
                action: action.to_string(),
            });
        }
        action.transition(self.state).ok_or(WorkflowError::IllegalTransition {
            from: self.state,
            action,
        })
    }

    /// Applies one action. On error nothing changes.
    pub fn apply(
        &mut self,
        actor: &Actor,
        action: Action,
        at: DateTime<Utc>,
        note: Option<String>,
        new_payload: Option<String>,
    ) -> Result<SubmissionState, WorkflowError> {
        let next = self.check(actor, action)?;
        let payload = match (action, new_payload) {
            (Action::Resubmit, Some(p)) => {
                self.payload = p.clone();
                Some(p)
            }
            _ => None,
        };
        self.history.push(HistoryEntry {
            actor: actor.id.clone(),
            role: actor.role,
            action,
            at,
            note,
            payload,
        });
        self.state = next;
        Ok(next)
    }

    /// Rebuilds a submission from its history alone, re-checking every step.
    pub fn replay(id: u64, target: SubmissionTarget, history: &[HistoryEntry]) -> Result<Self, WorkflowError> {
        let (first, rest) = history.split_first().ok_or(WorkflowError::UnknownSubmission(id))?;
        if first.action != Action::Submit {
            return Err(WorkflowError::IllegalTransition {
                from: SubmissionState::Submitted,
                action: first.action,
            });
        }
        let author = Actor::new(first.actor.clone(), first.role);
        let mut s = Submission::new(
            id,
            &author,
            target,
            first.payload.clone().unwrap_or_default(),
            first.at,
            first.note.clone(),
        );
        for e in rest {
            let actor = Actor::new(e.actor.clone(), e.role);
            s.apply(&actor, e.action, e.at, e.note.clone(), e.payload.clone())?;
        }
        Ok(s)
    }

    /// True when some approve entry precedes the first publish entry.
    pub fn approved_before_publish(&self) -> bool {
        let publish = self.history.iter().position(|e| e.action == Action::Publish);
        match publish {
            None => true,
            Some(p) => self.history[..p].iter().any(|e| e.action == Action::Approve),
        }
    }
}
