//! Keyword search over published pages.
//!
//! Text is lowercased and split into alphanumeric tokens. A page scores the
//! weighted frequency of each distinct query token: title occurrences count
//! 3, definition 2, every other text field 1. Ties break by ascending id.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::page::{LogicalPage, PageId};

const TITLE_WEIGHT: u64 = 3;
const DEFINITION_WEIGHT: u64 = 2;
const OTHER_WEIGHT: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub id: PageId,
    pub score: u64,
}

pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

/// Inverted index from token to per-page weighted term frequency.
#[derive(Debug, Clone, Default)]
pub struct SearchIndex {
    postings: BTreeMap<String, BTreeMap<PageId, u64>>,
}

impl SearchIndex {
    /// Indexes the published pages among `pages`.
    pub fn build<'a>(pages: impl IntoIterator<Item = &'a LogicalPage>) -> Self {
        let mut index = SearchIndex::default();
        for page in pages.into_iter().filter(|p| p.is_published()) {
            index.add(page);
        }
        index
    }

    fn add(&mut self, page: &LogicalPage) {
        let mut bump = |text: &str, weight: u64| {
            for token in tokenize(text) {
                *self
                    .postings
                    .entry(token)
                    .or_default()
                    .entry(page.id)
                    .or_insert(0) += weight;
            }
        };
        bump(&page.title, TITLE_WEIGHT);
        bump(&page.definition, DEFINITION_WEIGHT);
        for f in &page.figures {
            bump(f, OTHER_WEIGHT);
        }
        for c in &page.constructions {
            bump(&c.text, OTHER_WEIGHT);
        }
        for p in &page.properties {
            bump(&p.text, OTHER_WEIGHT);
        }
        for m in &page.more_to_explore {
            bump(&m.text, OTHER_WEIGHT);
        }
        bump(&page.historical_notes, OTHER_WEIGHT);
        for r in &page.remarks {
            bump(&r.text, OTHER_WEIGHT);
        }
        for b in &page.prereq_boxes {
            for t in &b.terms {
                bump(t, OTHER_WEIGHT);
            }
        }
        for c in &page.prerequisite_courses {
            bump(c, OTHER_WEIGHT);
        }
    }

    /// Ranked hits, best first. An empty query yields nothing.
    pub fn search(&self, query: &str) -> Vec<SearchHit> {
        let tokens: BTreeSet<String> = tokenize(query).collect();
        let mut scores: BTreeMap<&PageId, u64> = BTreeMap::new();
        for token in &tokens {
            if let Some(postings) = self.postings.get(token) {
                for (id, tf) in postings {
                    *scores.entry(id).or_insert(0) += tf;
                }
            }
        }
        let mut hits: Vec<SearchHit> = scores
            .into_iter()
            .map(|(id, score)| SearchHit { id: *id, score })
            .collect();
        hits.sort_by(|a, b| b.score.cmp(&a.score).then_with(|| a.id.cmp(&b.id)));
        hits
    }
}

/// One-shot search without keeping the index.
pub fn search<'a>(query: &str, pages: impl IntoIterator<Item = &'a LogicalPage>) -> Vec<SearchHit> {
    SearchIndex::build(pages).search(query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::content::page::{PageKind, PageStatus};
    use crate::content::seed;

    fn page(n: u32, title: &str, def: &str) -> LogicalPage {
        let mut p = LogicalPage::new(PageId::from_number(n), title, PageKind::GraphClass);
        p.definition = def.into();
        p.status = PageStatus::Published;
        p
    }

    #[test]
    fn field_weights() {
        let pages = [page(1, "Wheel", ""), page(2, "x", "wheel"), page(3, "y", "")];
        let hits = search("WHEEL", &pages);
        assert_eq!(hits, vec![
            SearchHit { id: PageId::from_number(1), score: 3 },
            SearchHit { id: PageId::from_number(2), score: 2 },
        ]);
    }

    #[test]
    fn ties_break_by_id() {
        let pages = [page(5, "cube", ""), page(2, "cube", "")];
        let ids: Vec<_> = search("cube", &pages).into_iter().map(|h| h.id.number()).collect();
        assert_eq!(ids, vec![2, 5]);
    }

    #[test]
    fn empty_and_unmatched_queries() {
        let pages = [page(1, "Wheel", "")];
        assert!(search("", &pages).is_empty());
        assert!(search("  ,, ", &pages).is_empty());
        assert!(search("zebra", &pages).is_empty());
    }

    #[test]
    fn drafts_are_not_indexed() {
        let mut p = page(1, "Wheel", "");
        p.status = PageStatus::Draft;
        assert!(search("wheel", [&p]).is_empty());
    }

    #[test]
    fn seed_wiener_query() {
        let pages = seed::pages();
        let hits = search("Wiener", pages.values());
        let ids: Vec<_> = hits.iter().map(|h| h.id.clone()).collect();
        assert_eq!(ids[0], seed::ODD);
        assert!(ids.contains(&seed::BLOCK));
    }
}
