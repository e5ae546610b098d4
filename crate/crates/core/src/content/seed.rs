//! Starter content: six pages, the prerequisite corpus and a small syllabus.

use std::collections::BTreeSet;

use super::corpus::{Corpus, CorpusTerm};
use super::page::{
    ColorCode, Construction, LogicalPage, PageId, PageIndex, PageKind, PageStatus, PrereqType, PrerequisiteBox,
    Property, Reference, Remark,
};
use super::relevance::{SyllabusMap, SyllabusUnit};
use crate::families::{Family, FamilySpec};

pub const WHEEL: PageId = PageId::from_number(1);
pub const GEAR: PageId = PageId::from_number(2);
pub const ODD: PageId = PageId::from_number(3);
pub const BLOCK: PageId = PageId::from_number(4);
pub const G_FAMILY: PageId = PageId::from_number(5);
pub const HYPERCUBE: PageId = PageId::from_number(6);

const P1_TERMS: &[(&str, &str)] = &[
    ("graphs", "Vertices, edges, adjacency, degree; simple undirected graphs only."),
    ("combinatorial structures", "Finite objects built by selection and arrangement rules."),
    ("graphs characterized by one or more parameters", "Families such as K_n, C_n, W_n indexed by integers."),
    ("induced subgraphs", "Keep a vertex subset and every edge between its members."),
    ("isomorphism", "A vertex bijection preserving adjacency both ways."),
    ("trees", "Connected acyclic graphs; n vertices, n-1 edges."),
    ("power set", "The set of all subsets; 2^n members for an n-set."),
    ("permutations and combinations", "Ordered and unordered selections; n!/(n-k)! and C(n,k)."),
    ("Pascal's triangle", "C(n,k) = C(n-1,k-1) + C(n-1,k) laid out by rows."),
    ("partitions", "Ways of splitting a set or an integer into unordered blocks."),
    ("recurrence relations", "Sequences defined from earlier terms; linear ones solve by characteristic roots."),
    ("generating functions", "Power series whose coefficients encode a sequence."),
    ("k-regular graphs", "Every vertex has degree k; then kn is even and m = kn/2."),
    ("cycles in graphs", "Closed walks without repeated vertices; C_n, girth, circumference."),
    ("distance in graphs", "Length of a shortest path; eccentricity, radius, diameter."),
    ("Wiener index", "Sum of distances over all unordered vertex pairs."),
    ("sets and related operations", "Union, intersection, complement, difference, disjointness."),
    ("univariate polynomials", "Polynomials in one variable; coefficients, degree, derivative."),
    ("computer algebra systems", "Exact symbolic computation tools, e.g. for sums and products."),
];

const P2_TERMS: &[(&str, &[&str])] = &[
    ("planarity and embeddings", &["Kuratowski's theorem write-up", "Euler's formula for plane graphs"]),
    ("perfect graphs", &["Definition and examples assignment", "Chordal graphs are perfect"]),
    ("Halin graphs", &["Tree plus a cycle through its leaves"]),
    ("distance-regular graphs", &["Intersection arrays", "Odd graphs as a worked example", "Hypercubes"]),
];

pub fn corpus() -> Corpus {
    let mut c = Corpus::new();
    for (term, target) in P1_TERMS {
        c.insert(CorpusTerm::new(PrereqType::P1, *term, vec![target.to_string()]).expect("valid P1 seed term"))
            .expect("seed terms are distinct");
    }
    for (term, targets) in P2_TERMS {
        let targets = targets.iter().map(|t| t.to_string()).collect();
        c.insert(CorpusTerm::new(PrereqType::P2, *term, targets).expect("valid P2 seed term"))
            .expect("seed terms are distinct");
    }
    c
}

fn prop(text: &str, color: Option<ColorCode>) -> Property {
    Property {
        text: text.into(),
        color,
    }
}

fn boxed(kind: PrereqType, terms: &[&str]) -> PrerequisiteBox {
    PrerequisiteBox {
        declared_type: kind,
        terms: terms.iter().map(|t| t.to_string()).collect(),
    }
}

fn bound(text: &str, family: Family, params: &[u64]) -> Construction {
    Construction {
        text: text.into(),
        binding: Some(FamilySpec {
            family,
            params: params.to_vec(),
        }),
    }
}

fn published(id: PageId, title: &str, kind: PageKind, definition: &str) -> LogicalPage {
    let mut p = LogicalPage::new(id, title, kind);
    p.status = PageStatus::Published;
    p.color = Some(ColorCode::InCourse);
    p.definition = definition.into();
    p
}

fn wheel() -> LogicalPage {
    let mut p = published(
        WHEEL,
        "Wheel graph",
        PageKind::SpecialGraph,
        "For n >= 4, W_n has a rim cycle C_{n-1} and one hub vertex adjacent to every rim vertex.",
    );
    p.figures.push("figures/wheel-7.svg".into());
    p.constructions.push(bound(
        "Start from C_{n-1} and add a hub joined to each rim vertex.",
        Family::Wheel,
        &[7],
    ));
    p.properties = vec![
        prop("|E| = 2(n-1), so edges per vertex tends to 2 as n grows.", None),
        prop("Planar, and its plane embedding is unique.", None),
        prop("Isomorphic to its own planar dual.", None),
        prop("Every wheel is a Halin graph.", Some(ColorCode::OutsideCourse)),
        prop("Chordal for n = 4, and perfect exactly when n - 1 is even or n = 4.", Some(ColorCode::OutsideCourse)),
    ];
    p.related.push(GEAR);
    p.more_to_explore.push(Reference {
        text: "Wheel graph encyclopedia entry".into(),
        url: Some("https://en.wikipedia.org/wiki/Wheel_graph".into()),
    });
    p.historical_notes = "Wheels appear early in polyhedral combinatorics as the skeletons of pyramids.".into();
    p.prereq_boxes = vec![
        boxed(PrereqType::P1, &["graphs", "cycles in graphs", "graphs characterized by one or more parameters"]),
        boxed(PrereqType::P2, &["planarity and embeddings", "Halin graphs", "perfect graphs"]),
    ];
    p
}

fn gear() -> LogicalPage {
    let mut p = published(
        GEAR,
        "Gear graph",
        PageKind::SpecialGraph,
        "The wheel W_n with one extra vertex inserted on every rim edge.",
    );
    p.constructions.push(bound(
        "Subdivide each of the n-1 rim edges of W_n once.",
        Family::Gear,
        &[7],
    ));
    p.properties = vec![
        prop("2n - 1 vertices and 3(n-1) edges.", None),
        prop("Bipartite: hub and subdivision vertices on one side.", None),
    ];
    p.related.push(WHEEL);
    p.remarks.push(Remark {
        author: "student-017".into(),
        text: "Drew G_5 through G_8; the rim looks like a cog.".into(),
    });
    p.prereq_boxes.push(boxed(PrereqType::P1, &["graphs", "cycles in graphs"]));
    p
}

fn odd() -> LogicalPage {
    let mut p = published(
        ODD,
        "Wiener index of Odd graphs",
        PageKind::GraphClass,
        "O_n has the (n-1)-subsets of a (2n-1)-set as vertices, adjacent when disjoint. \
         Its Wiener index sums the distances over all vertex pairs.",
    );
    p.constructions.push(bound(
        "Enumerate (n-1)-subsets as bitmasks and join disjoint pairs.",
        Family::Odd,
        &[3],
    ));
    p.properties = vec![
        prop("O_2 is C_3 and O_3 is the Petersen graph.", None),
        prop("n-regular and distance-regular with diameter n-1.", Some(ColorCode::OutsideCourse)),
        prop("Wiener index sequence 0, 3, 75, 1435, ... has two exact closed forms.", None),
    ];
    p.related.push(HYPERCUBE);
    p.more_to_explore.push(Reference {
        text: "Integer sequence entry A136328".into(),
        url: Some("https://oeis.org/A136328".into()),
    });
    p.prereq_boxes = vec![
        boxed(
            PrereqType::P1,
            &["graphs", "sets and related operations", "univariate polynomials", "cycles in graphs", "induced subgraphs"],
        ),
        boxed(PrereqType::P2, &["distance-regular graphs", "Wiener index", "computer algebra systems"]),
    ];
    p.computed.insert("a(3)".into(), "75".into());
    p
}

fn block() -> LogicalPage {
    let mut p = published(
        BLOCK,
        "block_n",
        PageKind::GraphClass,
        "Two copies of a 7-vertex rooted basic block joined at their roots give block_1. \
         Each further level subdivides the joining edge in two copies and links the new vertices.",
    );
    p.figures.push("figures/block-2.svg".into());
    p.constructions.push(bound("Recursive doubling from the basic block.", Family::Block, &[3]));
    p.properties = vec![
        prop("3-regular; V_n = 2(V_{n-1} + 1) and E_n = 2E_{n-1} + 3.", None),
        prop("Exercise: find the Wiener index for small n.", None),
        prop("Replacing the lower square of the basic block gives a second 3-regular family.", None),
    ];
    p.related.push(G_FAMILY);
    p.prereq_boxes.push(boxed(
        PrereqType::P1,
        &["k-regular graphs", "isomorphism", "recurrence relations", "distance in graphs"],
    ));
    p
}

fn g_family() -> LogicalPage {
    let mut p = published(
        G_FAMILY,
        "G_k family",
        PageKind::GraphClass,
        "A base square with four pendant squares per level; each level attaches new squares at the previous ports.",
    );
    p.constructions.push(bound("Closed variant, three levels.", Family::GkClosed, &[3]));
    p.properties = vec![
        prop("V = 16k + 4 vertices.", None),
        prop("Exercise: count the C_3, C_4 and C_6 subgraphs.", None),
    ];
    p.related.push(BLOCK);
    p.prereq_boxes.push(boxed(PrereqType::P1, &["k-regular graphs", "isomorphism", "recurrence relations"]));
    p
}

fn hypercube() -> LogicalPage {
    let mut p = published(
        HYPERCUBE,
        "Binary hypercube",
        PageKind::SpecialGraph,
        "Q_n has the binary words of length n as vertices, adjacent when they differ in one bit.",
    );
    p.constructions.push(bound("Label vertices 0..2^n-1 and flip each bit.", Family::Hypercube, &[4]));
    p.properties = vec![
        prop("n-regular with 2^n vertices and n 2^(n-1) edges.", None),
        prop("Wiener index n 4^(n-1).", None),
    ];
    p.related.push(ODD);
    p.prereq_boxes.push(boxed(PrereqType::P1, &["graphs", "distance in graphs", "power set"]));
    p
}

pub fn pages() -> PageIndex {
    [wheel(), gear(), odd(), block(), g_family(), hypercube()]
        .into_iter()
        .map(|p| (p.id, p))
        .collect()
}

pub fn syllabus() -> SyllabusMap {
    let unit = |id: &str, title: &str, terms: &[&str]| SyllabusUnit {
        id: id.into(),
        title: title.into(),
        covered_terms: terms.iter().map(|t| t.to_string()).collect::<BTreeSet<_>>(),
    };
    SyllabusMap {
        units: vec![
            unit("U1", "Counting", &["permutations and combinations", "Pascal's triangle", "power set"]),
            unit("U2", "Recurrences", &["recurrence relations", "generating functions"]),
            unit(
                "U3",
                "Graph basics",
                &["graphs", "isomorphism", "k-regular graphs", "cycles in graphs", "trees", "distance in graphs"],
            ),
        ],
        ..Default::default()
    }
}
