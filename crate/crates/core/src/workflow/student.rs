//! Student records, roster files and contribution logs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::grades::{assign_group, derive_t, Grade, Group, PointScale};
use super::WorkflowError;
use crate::content::PageId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Published,
    Rejected,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Published => "published",
            Outcome::Rejected => "rejected",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub submission: u64,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub credited_page: Option<PageId>,
    pub at: DateTime<Utc>,
}

/// A derived group that differs from the previous one. Recorded for an
/// instructor to confirm; the group itself already follows `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupChange {
    pub from: Option<Group>,
    pub to: Group,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudentRecord {
    pub id: String,
    pub name: String,
    grades: BTreeMap<String, Grade>,
    t: Option<Grade>,
    group: Option<Group>,
    #[serde(default)]
    pending_change: Option<GroupChange>,
    #[serde(default)]
    contribution_log: Vec<LogEntry>,
}

impl StudentRecord {
    pub fn new(id: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            name: name.into(),
            grades: BTreeMap::new(),
            t: None,
            group: None,
            pending_change: None,
            contribution_log: Vec::new(),
        }
    }

    pub fn grades(&self) -> &BTreeMap<String, Grade> {
        &self.grades
    }

    pub fn t(&self) -> Option<Grade> {
        self.t
    }

    pub fn group(&self) -> Option<Group> {
        self.group
    }

    pub fn pending_change(&self) -> Option<GroupChange> {
        self.pending_change
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.contribution_log
    }

    pub fn append_log(&mut self, entry: LogEntry) {
        self.contribution_log.push(entry);
    }

    /// Sets grades and recomputes `t` and the group. A group change on a
    /// student who already had a group is kept as pending for review.
    pub fn set_grades(
        &mut self,
        grades: BTreeMap<String, Grade>,
        relevant: Option<&BTreeSet<String>>,
        scale: &PointScale,
    ) -> Option<GroupChange> {
        self.grades = grades;
        self.recompute(relevant, scale)
    }

    pub fn recompute(&mut self, relevant: Option<&BTreeSet<String>>, scale: &PointScale) -> Option<GroupChange> {
        let before = self.group;
        self.t = derive_t(&self.grades, relevant, scale).ok();
        self.group = self.t.map(assign_group);
        match (before, self.group) {
            (Some(_), Some(to)) if before != self.group => {
                let change = GroupChange { from: before, to };
                self.pending_change = Some(change);
                Some(change)
            }
            _ => None,
        }
    }

    /// Instructor acknowledgement of a pending group change.
    pub fn confirm_group(&mut self) -> Option<GroupChange> {
        self.pending_change.take()
    }
}

/// Roster file: `id<TAB>name<TAB>subject=grade,...` per line, `#` comments.
pub fn parse_roster(text: &str) -> Result<Vec<StudentRecord>, WorkflowError> {
    let mut out = Vec::new();
    let mut ids = BTreeSet::new();
    for (i, line) in text.split('\n').enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| WorkflowError::Roster { line: i + 1, message };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(err("expected `id<TAB>name<TAB>subject=grade,...`".into()));
        }
        let id = fields[0].trim();
        if id.is_empty() || !ids.insert(id.to_string()) {
            return Err(err(format!("student id `{id}` empty or repeated")));
        }
        let mut grades = BTreeMap::new();
        for item in fields[2].split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (subject, grade) = item
                .split_once('=')
                .ok_or_else(|| err(format!("`{item}` is not subject=grade")))?;
            let grade: Grade = grade.parse().map_err(|e: WorkflowError| err(e.to_string()))?;
            if grades.insert(subject.trim().to_string(), grade).is_some() {
                return Err(err(format!("subject `{subject}` graded twice")));
            }
        }
        let mut record = StudentRecord::new(id, fields[1].trim());
        record.grades = grades;
        out.push(record);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionReport {
    pub student: String,
    pub entries: Vec<LogEntry>,
    pub counts: BTreeMap<Outcome, usize>,
}

pub fn contribution_report(
    students: &BTreeMap<String, StudentRecord>,
    id: &str,
) -> Result<ContributionReport, WorkflowError> {
    let s = students
        .get(id)
        .ok_or_else(|| WorkflowError::UnknownStudent(id.to_string()))?;
    let mut entries = s.contribution_log.clone();
    entries.sort_by_key(|e| e.at);
    let mut counts = BTreeMap::new();
    for e in &entries {
        *counts.entry(e.outcome).or_insert(0) += 1;
    }
    Ok(ContributionReport {
        student: id.to_string(),
        entries,
        counts,
    })
}

impl fmt::Display for ContributionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "student {}", self.student)?;
        writeln!(f, "{:<20}  {:>10}  {:<9}  page", "time", "submission", "outcome")?;
        for e in &self.entries {
            let page = e.credited_page.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<20}  {:>10}  {:<9}  {}",
                e.at.format("%Y-%m-%dT%H:%M:%SZ"),
                e.submission,
                e.outcome,
                page
            )?;
        }
        let counts: Vec<String> = self.counts.iter().map(|(o, n)| format!("{o}={n}")).collect();
        write!(f, "totals: {}", if counts.is_empty() { "none".into() } else { counts.join(" ") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roster_parsing() {
        let text = "# id\tname\tgrades\ns1\tAsha\tCGT=A,Algorithms=B\ns2\tRavi\tCGT=E\n";
        let r = parse_roster(text).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].grades()["Algorithms"], Grade::B);
        assert!(matches!(parse_roster("s1\tA\tCGT=Z\n"), Err(WorkflowError::Roster { line: 1, .. })));
        assert!(parse_roster("s1\tA\tCGT=A\ns1\tB\tCGT=B\n").is_err());
        assert!(parse_roster("s1 A CGT=A\n").is_err());
    }

    #[test]
    fn promotion_is_surfaced() {
        let s = PointScale::default();
        let mut r = StudentRecord::new("s1", "Asha");
        assert_eq!(r.set_grades([("CGT".to_string(), Grade::E)].into(), None, &s), None);
        assert_eq!(r.group(), Some(Group::Three));
        let change = r.set_grades([("CGT".to_string(), Grade::C)].into(), None, &s).unwrap();
        assert_eq!(change, GroupChange { from: Some(Group::Three), to: Group::Two });
        assert_eq!(r.group(), Some(Group::Two));
        assert_eq!(r.confirm_group(), Some(change));
        assert_eq!(r.pending_change(), None);
    }

    #[test]
    fn reports() {
        let mut students = BTreeMap::new();
        students.insert("s1".to_string(), StudentRecord::new("s1", "Asha"));
        let empty = contribution_report(&students, "s1").unwrap();
        assert!(empty.entries.is_empty());
        assert!(empty.to_string().ends_with("totals: none"));
        assert!(matches!(contribution_report(&students, "nobody"), Err(WorkflowError::UnknownStudent(_))));

        let at = DateTime::from_timestamp(1_700_000_000, 0).unwrap();
        let s1 = students.get_mut("s1").unwrap();
        s1.append_log(LogEntry { submission: 2, outcome: Outcome::Rejected, credited_page: None, at });
        let report = contribution_report(&students, "s1").unwrap();
        assert_eq!(report.counts[&Outcome::Rejected], 1);
        assert_eq!(report.entries[0].credited_page, None);
    }
}
