//! Structural checks on pages, and the inverse page-to-term relation.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::corpus::Corpus;
use super::page::{LogicalPage, PageId, PageIndex, PrereqType};
use super::ContentError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Finding {
    EmptyTitle,
    MissingDefinition,
    UnresolvedRelated { id: PageId },
    UncoloredProperty { index: usize },
    EmptyPrereqBox { index: usize },
    UnknownTerm { term: String },
    BoxTypeMismatch { index: usize, declared: PrereqType, expected: PrereqType },
    InvalidBinding { index: usize, message: String },
}

impl Finding {
    pub fn reason(&self) -> &'static str {
        match self {
            Finding::EmptyTitle => "empty-title",
            Finding::MissingDefinition => "missing-definition",
            Finding::UnresolvedRelated { .. } => "unresolved-related",
            Finding::UncoloredProperty { .. } => "uncolored-property",
            Finding::EmptyPrereqBox { .. } => "empty-prereq-box",
            Finding::UnknownTerm { .. } => "unknown-term",
            Finding::BoxTypeMismatch { .. } => "box-type-mismatch",
            Finding::InvalidBinding { .. } => "invalid-binding",
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::EmptyTitle => write!(f, "title is empty"),
            Finding::MissingDefinition => write!(f, "published pages need a definition"),
            Finding::UnresolvedRelated { id } => write!(f, "related page {id} does not exist"),
            Finding::UncoloredProperty { index } => write!(f, "property {index} has no color code"),
            Finding::EmptyPrereqBox { index } => write!(f, "prerequisite box {index} is empty"),
            Finding::UnknownTerm { term } => write!(f, "term `{term}` is not in the corpus"),
            Finding::BoxTypeMismatch { index, declared, expected } => {
                write!(f, "prerequisite box {index} declared {declared}, members imply {expected}")
            }
            Finding::InvalidBinding { index, message } => {
                write!(f, "construction {index} binding invalid: {message}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Reports every violated page or prerequisite-box rule. `pages` resolves
/// related ids; `page` itself need not be in it.
pub fn validate_page(page: &LogicalPage, corpus: &Corpus, pages: &PageIndex) -> ValidationReport {
    let mut findings = Vec::new();
    if page.title.trim().is_empty() {
        findings.push(Finding::EmptyTitle);
    }
    if page.is_published() && page.definition.trim().is_empty() {
        findings.push(Finding::MissingDefinition);
    }
    for id in &page.related {
        if *id != page.id && !pages.contains_key(id) {
            findings.push(Finding::UnresolvedRelated { id: *id });
        }
    }
    for i in 0..page.properties.len() {
        if page.property_color(i).is_none() {
            findings.push(Finding::UncoloredProperty { index: i });
        }
    }
    for (index, c) in page.constructions.iter().enumerate() {
        if let Some(spec) = &c.binding {
            if let Err(e) = spec.validate() {
                findings.push(Finding::InvalidBinding {
                    index,
                    message: e.to_string(),
                });
            }
        }
    }
    for (index, b) in page.prereq_boxes.iter().enumerate() {
        if b.terms.is_empty() {
            findings.push(Finding::EmptyPrereqBox { index });
            continue;
        }
        let mut any_p2 = false;
        let mut all_known = true;
        for t in &b.terms {
            match corpus.get(t) {
                Some(term) => any_p2 |= term.kind == PrereqType::P2,
                None => {
                    all_known = false;
                    findings.push(Finding::UnknownTerm { term: t.clone() });
                }
            }
        }
        let expected = if any_p2 { PrereqType::P2 } else { PrereqType::P1 };
        if all_known && b.declared_type != expected {
            findings.push(Finding::BoxTypeMismatch {
                index,
                declared: b.declared_type,
                expected,
            });
        }
    }
    ValidationReport { findings }
}

/// Published pages whose prerequisite boxes mention `term`, ascending by id.
pub fn backward_links(term: &str, corpus: &Corpus, pages: &PageIndex) -> Result<Vec<PageId>, ContentError> {
    if !corpus.contains(term) {
        return Err(ContentError::UnknownTerm(term.to_string()));
    }
    let key = term.to_lowercase();
    Ok(pages
        .values()
        .filter(|p| p.is_published())
        .filter(|p| {
            p.prereq_boxes
                .iter()
                .flat_map(|b| &b.terms)
                .any(|t| t.to_lowercase() == key)
        })
        .map(|p| p.id)
        .collect())
}
