use std::collections::BTreeSet;

use acgt_core::content::corpus::is_valid_term_text;
use acgt_core::content::{
    backward_links, export_page, import_page, relevance, search, seed, ColorCode, Construction, Corpus, CorpusTerm,
    LogicalPage, PageId, PageIndex, PageKind, PageStatus, PrereqType, PrerequisiteBox, Property, Reference, Remark,
    SyllabusMap, SyllabusUnit,
};
use acgt_core::{BigRational, Family, FamilySpec};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::sample::select;

fn text() -> impl Strategy<Value = String> {
    "[ -~éΔ\n\t]{0,24}"
}

fn term_text() -> impl Strategy<Value = String> {
    "[a-zA-Z][a-zA-Z' -]{0,14}[a-z]".prop_filter("valid term", |t| is_valid_term_text(t))
}

fn color() -> impl Strategy<Value = Option<ColorCode>> {
    prop_oneof![Just(None), Just(Some(ColorCode::InCourse)), Just(Some(ColorCode::OutsideCourse))]
}

fn page_id() -> impl Strategy<Value = PageId> {
    (0u32..=PageId::MAX).prop_map(PageId::from_number)
}

fn binding() -> impl Strategy<Value = Option<FamilySpec>> {
    let family = select(Family::ALL.to_vec());
    prop_oneof![
        Just(None),
        (family, proptest::collection::vec(0u64..100, 0..3)).prop_map(|(family, params)| Some(FamilySpec { family, params })),
    ]
}

prop_compose! {
    fn arbitrary_page()(
        id in page_id(),
        title in text(),
        kind in select(PageKind::ALL.to_vec()),
        status in select(PageStatus::ALL.to_vec()),
        color in color(),
        definition in text(),
        figures in proptest::collection::vec(text(), 0..3),
        constructions in proptest::collection::vec((text(), binding()), 0..3),
        properties in proptest::collection::vec((text(), color()), 0..4),
        related in proptest::collection::vec(page_id(), 0..3),
        more in proptest::collection::vec((text(), proptest::option::of(text())), 0..2),
        hist in text(),
        remarks in proptest::collection::vec((text(), text()), 0..2),
        boxes in proptest::collection::vec((select(PrereqType::ALL.to_vec()), proptest::collection::vec(term_text(), 0..4)), 0..3),
        courses in proptest::collection::vec(text(), 0..2),
        computed in proptest::collection::btree_map(text(), text(), 0..3),
    ) -> LogicalPage {
        let mut p = LogicalPage::new(id, title, kind);
        p.status = status;
        p.color = color;
        p.definition = definition;
        p.figures = figures;
        p.constructions = constructions.into_iter().map(|(text, binding)| Construction { text, binding }).collect();
        p.properties = properties.into_iter().map(|(text, color)| Property { text, color }).collect();
        p.related = related;
        p.more_to_explore = more.into_iter().map(|(text, url)| Reference { text, url }).collect();
        p.historical_notes = hist;
        p.remarks = remarks.into_iter().map(|(author, text)| Remark { author, text }).collect();
        p.prereq_boxes = boxes.into_iter().map(|(declared_type, terms)| PrerequisiteBox { declared_type, terms }).collect();
        p.prerequisite_courses = courses;
        p.computed = computed;
        p
    }
}

/// Pages drawing prerequisite terms from the seed corpus.
fn corpus_pages() -> impl Strategy<Value = PageIndex> {
    let terms: Vec<String> = seed::corpus().iter().map(|t| t.term.clone()).collect();
    let page = (
        1u32..40,
        any::<bool>(),
        proptest::collection::vec(proptest::collection::vec(select(terms), 1..4), 0..3),
    );
    proptest::collection::vec(page, 0..12).prop_map(|specs| {
        let mut index = PageIndex::new();
        for (n, published, boxes) in specs {
            let mut p = LogicalPage::new(PageId::from_number(n), "t", PageKind::GraphClass);
            p.definition = "d".into();
            p.status = if published { PageStatus::Published } else { PageStatus::Draft };
            p.prereq_boxes = boxes
                .into_iter()
                .map(|terms| PrerequisiteBox { declared_type: PrereqType::P1, terms })
                .collect();
            index.insert(p.id, p);
        }
        index
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn fielded_round_trip(page in arbitrary_page()) {
        let text = export_page(&page);
        let back = import_page(&text);
        prop_assert_eq!(back.as_ref(), Ok(&page), "exported:\n{}", text);
        prop_assert_eq!(export_page(&back.unwrap()), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn backward_links_invert_page_terms(pages in corpus_pages()) {
        let corpus = seed::corpus();
        let mut forward: BTreeSet<(String, PageId)> = BTreeSet::new();
        for p in pages.values().filter(|p| p.is_published()) {
            for (t, _) in p.prerequisite_terms() {
                forward.insert((t.to_lowercase(), p.id));
            }
        }
        let mut inverse = BTreeSet::new();
        for term in corpus.iter() {
            let links = backward_links(&term.term, &corpus, &pages).unwrap();
            prop_assert!(links.windows(2).all(|w| w[0] < w[1]));
            for id in links {
                inverse.insert((term.term.to_lowercase(), id));
            }
        }
        prop_assert_eq!(forward, inverse);
    }

    #[test]
    fn relevance_is_bounded_and_monotone(
        pages in corpus_pages(),
        covered in proptest::collection::vec(any::<bool>(), 23),
        extra in 0usize..23,
        w1 in 1i64..5,
        w2 in 1i64..5,
    ) {
        let corpus = seed::corpus();
        let terms: Vec<String> = corpus.iter().map(|t| t.term.clone()).collect();
        let unit = |set: BTreeSet<String>| SyllabusUnit { id: "u".into(), title: "u".into(), covered_terms: set };
        let base: BTreeSet<String> = terms.iter().zip(&covered).filter(|(_, c)| **c).map(|(t, _)| t.clone()).collect();
        let mut more = base.clone();
        more.insert(terms[extra % terms.len()].clone());
        let weights = (BigRational::from_integer(w1.into()), BigRational::from_integer(w2.into()));
        let s0 = SyllabusMap::new(vec![unit(base)], weights.0.clone(), weights.1.clone()).unwrap();
        let s1 = SyllabusMap::new(vec![unit(more)], weights.0, weights.1).unwrap();
        for p in pages.values() {
            let r0 = relevance(p, &corpus, &s0);
            let r1 = relevance(p, &corpus, &s1);
            prop_assert!(r0 >= BigRational::zero() && r0 <= BigRational::one());
            prop_assert!(r1 >= r0);
        }
    }

    #[test]
    fn search_is_deterministic(q in "[a-zA-Z ]{0,12}") {
        let pages = seed::pages();
        let a = search(&q, pages.values());
        let b = search(&q, pages.values().rev());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn seed_corpus_round_trips() {
    for page in seed::pages().values() {
        assert_eq!(&import_page(&export_page(page)).unwrap(), page);
    }
    let corpus = seed::corpus();
    assert_eq!(Corpus::parse(&corpus.render()).unwrap().render(), corpus.render());
    let syllabus = seed::syllabus();
    assert_eq!(SyllabusMap::parse(&syllabus.render()).unwrap(), syllabus);
}

#[test]
fn sequence_entry_fixture_keeps_formula_verbatim() {
    let text = include_str!("fixtures/a136328.page");
    let page = import_page(text).unwrap();
    let formula = &page.constructions[0];
    assert_eq!(formula.binding, Some(FamilySpec { family: Family::Odd, params: vec![3] }));
    let expected = "FORMULA\n\
        B_r = n - floor(r/2), C_r = ceil(r/2) for r = 1..n-1\n\
        H(n; t) = (1/2) binomial(2n-1, n-1) * sum_{j=1}^{n-1} t^j * prod_{r=1}^{j} B_r / C_r\n\
        a(n) = H'(n; 1)\n\
        \n\
        Second form, k = n:\n  \
          d(k) = k * ( sum_{j=0}^{floor(k/2)-1} (2j+1) binomial(k-1, j)^2 / (j+1)\n             \
          + 2 sum_{j=floor(k/2)}^{k-2} (k-1-j) binomial(k-1, j)^2 / (j+1) )\n  \
          a(k) = binomial(2k-1, k-1) * d(k) / 2";
    assert_eq!(formula.text, expected);
    assert_eq!(export_page(&page), text);
    assert_eq!(page.computed["first-terms"], "0, 3, 75, 1435, 25515");
}

#[test]
fn relevance_examples() {
    let corpus = seed::corpus();
    let mut page = LogicalPage::new(PageId::from_number(9), "p", PageKind::GraphClass);
    page.prereq_boxes.push(PrerequisiteBox {
        declared_type: PrereqType::P2,
        terms: vec!["graphs".into(), "perfect graphs".into()],
    });
    let covering = |terms: &[&str]| SyllabusMap {
        units: vec![SyllabusUnit {
            id: "u".into(),
            title: "u".into(),
            covered_terms: terms.iter().map(|t| t.to_string()).collect(),
        }],
        ..Default::default()
    };
    assert_eq!(relevance(&page, &corpus, &covering(&["graphs"])), BigRational::new(1.into(), 3.into()));
    assert_eq!(relevance(&page, &corpus, &covering(&["graphs", "perfect graphs"])), BigRational::one());
    assert_eq!(relevance(&page, &corpus, &covering(&[])), BigRational::zero());
}

#[test]
fn seed_backlinks_and_search() {
    let pages = seed::pages();
    let corpus = seed::corpus();
    let links = backward_links("recurrence relations", &corpus, &pages).unwrap();
    assert_eq!(links, vec![seed::BLOCK, seed::G_FAMILY]);
    let hits = search("Wiener", pages.values());
    assert_eq!(hits[0].id, seed::ODD);
    assert!(hits.iter().any(|h| h.id == seed::BLOCK));
    assert!(CorpusTerm::new(PrereqType::P2, "x", vec![]).is_err());
}
