//! The prerequisite vocabulary.
//!
//! File format: one term per line, `type<TAB>term<TAB>target...`. Blank
//! lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::page::PrereqType;
use super::ContentError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusTerm {
    pub term: String,
    pub kind: PrereqType,
    /// `P1`: exactly one write-up or page id. `P2`: one to four write-ups or
    /// reference pointers.
    pub targets: Vec<String>,
}

impl CorpusTerm {
    pub fn new(kind: PrereqType, term: impl Into<String>, targets: Vec<String>) -> Result<Self, ContentError> {
        let term = CorpusTerm {
            term: term.into(),
            kind,
            targets,
        };
        term.check()?;
        Ok(term)
    }

    fn check(&self) -> Result<(), ContentError> {
        let bad = |reason: &str| ContentError::InvalidTerm {
            term: self.term.clone(),
            reason: reason.to_string(),
        };
        if !is_valid_term_text(&self.term) {
            return Err(bad("terms are non-empty, trimmed, and contain no tab, newline or `;`"));
        }
        let allowed = match self.kind {
            PrereqType::P1 => 1..=1,
            PrereqType::P2 => 1..=4,
        };
        if !allowed.contains(&self.targets.len()) {
            return Err(bad(match self.kind {
                PrereqType::P1 => "P1 terms point to exactly one write-up",
                PrereqType::P2 => "P2 terms point to one to four write-ups",
            }));
        }
        if self
            .targets
            .iter()
            .any(|t| t.trim().is_empty() || t.contains(['\t', '\n', '\r']))
        {
            return Err(bad("targets are non-empty single-line text"));
        }
        Ok(())
    }
}

pub fn is_valid_term_text(term: &str) -> bool {
    !term.is_empty() && term.trim() == term && !term.contains(['\t', '\n', '\r', ';'])
}

/// Terms keyed case-insensitively.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    terms: BTreeMap<String, CorpusTerm>,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, term: CorpusTerm) -> Result<(), ContentError> {
        term.check()?;
        let key = term.term.to_lowercase();
        if self.terms.contains_key(&key) {
            return Err(ContentError::DuplicateTerm(term.term));
        }
        self.terms.insert(key, term);
        Ok(())
    }

    pub fn get(&self, term: &str) -> Option<&CorpusTerm> {
        self.terms.get(&term.to_lowercase())
    }

    pub fn contains(&self, term: &str) -> bool {
        self.get(term).is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CorpusTerm> {
        self.terms.values()
    }

    pub fn parse(text: &str) -> Result<Self, ContentError> {
        let mut corpus = Corpus::new();
        for (i, line) in text.split('\n').enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let at_line = |message: String| ContentError::Parse {
                line: i + 1,
                tag: None,
                message,
            };
            if fields.len() < 3 {
                return Err(at_line("expected `type<TAB>term<TAB>target...`".into()));
            }
            let kind: PrereqType = fields[0].parse().map_err(|e: ContentError| at_line(e.to_string()))?;
            let targets = fields[2..].iter().map(|s| s.to_string()).collect();
            let term = CorpusTerm::new(kind, fields[1], targets).map_err(|e| at_line(e.to_string()))?;
            corpus.insert(term).map_err(|e| at_line(e.to_string()))?;
        }
        Ok(corpus)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in self.iter() {
            let _ = writeln!(out, "{}\t{}\t{}", t.kind, t.term, t.targets.join("\t"));
        }
        out
    }
}
