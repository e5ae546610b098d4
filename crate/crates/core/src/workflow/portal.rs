//! In-memory portal state tying content and workflow together. The service
//! crate wraps it with persistence; every operation here is deterministic
//! given the caller-supplied timestamps.

use std::collections::{BTreeMap, BTreeSet};

use chrono::{DateTime, Utc};

use super::grades::PointScale;
use super::student::{GroupChange, LogEntry, Outcome, StudentRecord};
use super::submission::{Action, Actor, Submission, SubmissionState, SubmissionTarget};
use super::WorkflowError;
use crate::content::{
    import_page, parse_records, validate_page, fielded::apply_record, Corpus, LogicalPage, PageIndex, PageStatus,
    SyllabusMap,
};

/// Candidate page after applying the submission's payload, validated
/// against the current index. Nothing is modified.
pub fn apply_submission(sub: &Submission, pages: &PageIndex, corpus: &Corpus) -> Result<LogicalPage, WorkflowError> {
    let candidate = build_candidate(&sub.target, sub.payload(), pages)?;
    let report = validate_page(&candidate, corpus, pages);
    if !report.is_clean() {
        return Err(WorkflowError::ValidationFailed(report));
    }
    Ok(candidate)
}

fn build_candidate(target: &SubmissionTarget, payload: &str, pages: &PageIndex) -> Result<LogicalPage, WorkflowError> {
    match target {
        SubmissionTarget::NewPage => {
            let mut page = import_page(payload).map_err(WorkflowError::Payload)?;
            if pages.contains_key(&page.id) {
                return Err(WorkflowError::PageExists(page.id));
            }
            page.status = PageStatus::Published;
            Ok(page)
        }
        SubmissionTarget::Page { id, .. } => {
            let mut page = pages.get(id).cloned().ok_or(WorkflowError::UnknownPage(*id))?;
            let only = target.attribute_tag()?;
            for r in parse_records(payload).map_err(WorkflowError::Payload)? {
                if only.is_some_and(|t| t != r.tag) {
                    return Err(WorkflowError::Payload(crate::content::ContentError::Parse {
                        line: r.line,
                        tag: Some(format!("%{}", r.tag)),
                        message: "tag outside the targeted attribute".into(),
                    }));
                }
                apply_record(&mut page, &r).map_err(WorkflowError::Payload)?;
            }
            Ok(page)
        }
    }
}

/// Post-publish documents, computed before anything is committed.
#[derive(Debug, Clone, PartialEq)]
pub struct PublishOutcome {
    pub page: LogicalPage,
    pub submission: Submission,
    pub student: Option<StudentRecord>,
}

#[derive(Debug, Clone, Default)]
pub struct Portal {
    pub pages: PageIndex,
    pub corpus: Corpus,
    pub syllabus: SyllabusMap,
    pub submissions: BTreeMap<u64, Submission>,
    pub students: BTreeMap<String, StudentRecord>,
    /// Subjects counted towards the term grade; `None` counts all.
    pub relevant_subjects: Option<BTreeSet<String>>,
    pub scale: PointScale,
}

impl Portal {
    pub fn new(pages: PageIndex, corpus: Corpus, syllabus: SyllabusMap) -> Self {
        Self {
            pages,
            corpus,
            syllabus,
            ..Default::default()
        }
    }

    pub fn seeded() -> Self {
        use crate::content::seed;
        Self::new(seed::pages(), seed::corpus(), seed::syllabus())
    }

    fn next_submission_id(&self) -> u64 {
        self.submissions.keys().next_back().map_or(1, |k| k + 1)
    }

    pub fn submission(&self, id: u64) -> Result<&Submission, WorkflowError> {
        self.submissions.get(&id).ok_or(WorkflowError::UnknownSubmission(id))
    }

    pub fn submissions_in(&self, state: Option<SubmissionState>) -> impl Iterator<Item = &Submission> {
        self.submissions
            .values()
            .filter(move |s| state.is_none_or(|st| s.state() == st))
    }

    /// Files a new submission after a syntax check of its payload.
    pub fn submit(
        &mut self,
        actor: &Actor,
        target: SubmissionTarget,
        payload: String,
        at: DateTime<Utc>,
        note: Option<String>,
    ) -> Result<&Submission, WorkflowError> {
        self.check_payload(&target, &payload)?;
        let id = self.next_submission_id();
        let sub = Submission::new(id, actor, target, payload, at, note);
        Ok(self.submissions.entry(id).or_insert(sub))
    }

    fn check_payload(&self, target: &SubmissionTarget, payload: &str) -> Result<(), WorkflowError> {
        match target {
            SubmissionTarget::NewPage => import_page(payload).map(|_| ()).map_err(WorkflowError::Payload),
            SubmissionTarget::Page { id, .. } => {
                if !self.pages.contains_key(id) {
                    return Err(WorkflowError::UnknownPage(*id));
                }
                target.attribute_tag()?;
                parse_records(payload).map(|_| ()).map_err(WorkflowError::Payload)
            }
        }
    }

    /// Start review, request changes, approve or reject. A rejection is
    /// logged against the author.
    pub fn review(
        &mut self,
        actor: &Actor,
        id: u64,
        action: Action,
        at: DateTime<Utc>,
        note: Option<String>,
    ) -> Result<&Submission, WorkflowError> {
        if !Action::REVIEW.contains(&action) {
            let from = self.submission(id)?.state();
            return Err(WorkflowError::IllegalTransition { from, action });
        }
        let sub = self.submissions.get_mut(&id).ok_or(WorkflowError::UnknownSubmission(id))?;
        sub.apply(actor, action, at, note, None)?;
        if action == Action::Reject {
            if let Some(student) = self.students.get_mut(&sub.author) {
                student.append_log(LogEntry {
                    submission: id,
                    outcome: Outcome::Rejected,
                    credited_page: None,
                    at,
                });
            }
        }
        Ok(sub)
    }

    pub fn resubmit(
        &mut self,
        actor: &Actor,
        id: u64,
        payload: Option<String>,
        at: DateTime<Utc>,
        note: Option<String>,
    ) -> Result<&Submission, WorkflowError> {
        let target = self.submission(id)?.target.clone();
        if let Some(p) = &payload {
            self.check_payload(&target, p)?;
        }
        let sub = self.submissions.get_mut(&id).ok_or(WorkflowError::UnknownSubmission(id))?;
        sub.apply(actor, Action::Resubmit, at, note, payload)?;
        Ok(sub)
    }

    /// Everything a successful publish would write, or the reason it cannot
    /// happen. Role and state errors come first.
    pub fn prepare_publish(&self, actor: &Actor, id: u64, at: DateTime<Utc>) -> Result<PublishOutcome, WorkflowError> {
        let sub = self.submission(id)?;
        sub.check(actor, Action::Publish)?;
        let page = apply_submission(sub, &self.pages, &self.corpus)?;
        let mut submission = sub.clone();
        submission.apply(actor, Action::Publish, at, None, None)?;
        let student = self.students.get(&sub.author).cloned().map(|mut s| {
            s.append_log(LogEntry {
                submission: id,
                outcome: Outcome::Published,
                credited_page: Some(page.id),
                at,
            });
            s
        });
        Ok(PublishOutcome {
            page,
            submission,
            student,
        })
    }

    pub fn commit(&mut self, outcome: PublishOutcome) {
        self.pages.insert(outcome.page.id, outcome.page);
        self.submissions.insert(outcome.submission.id, outcome.submission);
        if let Some(s) = outcome.student {
            self.students.insert(s.id.clone(), s);
        }
    }

    /// Appends a `publish-failed` entry; the submission stays Approved.
    pub fn record_publish_failure(
        &mut self,
        actor: &Actor,
        id: u64,
        at: DateTime<Utc>,
        error: &WorkflowError,
    ) -> Result<&Submission, WorkflowError> {
        let sub = self.submissions.get_mut(&id).ok_or(WorkflowError::UnknownSubmission(id))?;
        sub.apply(actor, Action::PublishFailed, at, Some(error.to_string()), None)?;
        Ok(sub)
    }

    /// Publishes atomically: either page, submission and log all change, or
    /// only a failure entry is recorded.
    pub fn publish(&mut self, actor: &Actor, id: u64, at: DateTime<Utc>) -> Result<&LogicalPage, WorkflowError> {
        self.submission(id)?.check(actor, Action::Publish)?;
        match self.prepare_publish(actor, id, at) {
            Ok(outcome) => {
                let page_id = outcome.page.id;
                self.commit(outcome);
                Ok(&self.pages[&page_id])
            }
            Err(e) => {
                self.record_publish_failure(actor, id, at, &e)?;
                Err(e)
            }
        }
    }

    /// Merges roster records: new students are added, known ones get their
    /// grades replaced and logs kept. Returns group changes needing review.
    pub fn load_roster(&mut self, records: Vec<StudentRecord>) -> Vec<(String, GroupChange)> {
        let mut changes = Vec::new();
        for r in records {
            let grades = r.grades().clone();
            let entry = self.students.entry(r.id.clone()).or_insert(r);
            if let Some(c) = entry.set_grades(grades, self.relevant_subjects.as_ref(), &self.scale) {
                changes.push((entry.id.clone(), c));
            }
        }
        changes
    }
}
