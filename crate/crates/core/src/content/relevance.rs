//! Degree of relevance of a page to the course syllabus.
//!
//! Each distinct prerequisite term of a page counts once, weighted by its
//! type (`w1` for P1, `w2` for P2). Relevance is the weighted share of those
//! terms covered by some syllabus unit.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::corpus::Corpus;
use super::page::{LogicalPage, PrereqType};
use super::ContentError;
use crate::graph::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllabusUnit {
    pub id: String,
    pub title: String,
    pub covered_terms: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllabusMap {
    pub units: Vec<SyllabusUnit>,
    pub w1: BigRational,
    pub w2: BigRational,
}

impl Default for SyllabusMap {
    fn default() -> Self {
        Self {
            units: Vec::new(),
            w1: BigRational::one(),
            w2: BigRational::from_integer(2.into()),
        }
    }
}

impl SyllabusMap {
    pub fn new(units: Vec<SyllabusUnit>, w1: BigRational, w2: BigRational) -> Result<Self, ContentError> {
        let map = Self { units, w1, w2 };
        map.check()?;
        Ok(map)
    }

    fn check(&self) -> Result<(), ContentError> {
        if self.w1 <= BigRational::zero() || self.w2 <= BigRational::zero() {
            return Err(ContentError::InvalidSyllabus("weights must be positive".into()));
        }
        let mut ids = BTreeSet::new();
        for u in &self.units {
            if u.id.is_empty() || !ids.insert(u.id.as_str()) {
                return Err(ContentError::InvalidSyllabus(format!("unit id `{}` empty or repeated", u.id)));
            }
        }
        Ok(())
    }

    pub fn covers(&self, term: &str) -> bool {
        let key = term.to_lowercase();
        self.units
            .iter()
            .any(|u| u.covered_terms.iter().any(|t| t.to_lowercase() == key))
    }

    fn weight(&self, kind: PrereqType) -> &BigRational {
        match kind {
            PrereqType::P1 => &self.w1,
            PrereqType::P2 => &self.w2,
        }
    }

    /// Syllabus file: `@weights<TAB>w1<TAB>w2` (optional, default 1 and 2),
    /// then one unit per line as `id<TAB>title<TAB>term; term; ...`. Lines
    /// starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self, ContentError> {
        let mut map = SyllabusMap::default();
        for (i, line) in text.split('\n').enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let at_line = |message: String| ContentError::Parse {
                line: i + 1,
                tag: None,
                message,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields[0] == "@weights" {
                if fields.len() != 3 {
                    return Err(at_line("expected `@weights<TAB>w1<TAB>w2`".into()));
                }
                let w = |s: &str| parse_rational(s.trim()).ok_or_else(|| at_line(format!("bad weight `{s}`")));
                map.w1 = w(fields[1])?;
                map.w2 = w(fields[2])?;
                continue;
            }
            if fields.len() != 3 {
                return Err(at_line("expected `id<TAB>title<TAB>terms`".into()));
            }
            map.units.push(SyllabusUnit {
                id: fields[0].to_string(),
                title: fields[1].to_string(),
                covered_terms: fields[2]
                    .split(';')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(str::to_string)
                    .collect(),
            });
        }
        map.check()?;
        Ok(map)
    }

    pub fn render(&self) -> String {
        let mut out = format!("@weights\t{}\t{}\n", format_rational(&self.w1), format_rational(&self.w2));
        for u in &self.units {
            let terms: Vec<&str> = u.covered_terms.iter().map(String::as_str).collect();
            out.push_str(&format!("{}\t{}\t{}\n", u.id, u.title, terms.join("; ")));
        }
        out
    }
}

/// Weighted share of the page's prerequisite terms that the syllabus covers,
/// in `[0, 1]`. A page without prerequisite terms has relevance 1. Term
/// types come from the corpus, falling back to the box's declared type.
pub fn relevance(page: &LogicalPage, corpus: &Corpus, syllabus: &SyllabusMap) -> BigRational {
    let mut covered = BigRational::zero();
    let mut total = BigRational::zero();
    for (term, box_type) in page.prerequisite_terms() {
        let kind = corpus.get(term).map_or(box_type, |t| t.kind);
        let w = syllabus.weight(kind);
        total += w;
        if syllabus.covers(term) {
            covered += w;
        }
    }
    if total.is_zero() {
        BigRational::one()
    } else {
        covered / total
    }
}
