use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ContentError;
use crate::families::FamilySpec;

/// `ACGT-` followed by six digits. Never changes once a page exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PageId(u32);

impl PageId {
    pub const MAX: u32 = 999_999;

    pub const fn from_number(n: u32) -> Self {
        assert!(n <= Self::MAX, "page numbers have six digits");
        PageId(n)
    }

    pub fn number(self) -> u32 {
        self.0
    }

    pub fn as_string(self) -> String {
        self.to_string()
    }
}

impl FromStr for PageId {
    type Err = ContentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .strip_prefix("ACGT-")
            .filter(|d| d.len() == 6 && d.bytes().all(|b| b.is_ascii_digit()));
        match digits {
            Some(d) => Ok(PageId(d.parse().expect("six digits"))),
            None => Err(ContentError::InvalidPageId(s.to_string())),
        }
    }
}

impl TryFrom<String> for PageId {
    type Error = ContentError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<PageId> for String {
    fn from(id: PageId) -> Self {
        id.to_string()
    }
}

impl fmt::Display for PageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ACGT-{:06}", self.0)
    }
}

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = ContentError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(ContentError::InvalidKeyword {
                        kind: stringify!($name),
                        value: s.to_string(),
                    }),
                }
            }
        }
    };
}

keyword_enum!(PageKind {
    SpecialGraph => "special-graph",
    GraphClass => "graph-class",
    CombinatorialObject => "combinatorial-object",
});

keyword_enum!(
    /// Whether a page or property is part of the course or beyond it.
    ColorCode {
        InCourse => "in-course",
        OutsideCourse => "outside-course",
    }
);

keyword_enum!(
    /// `P1` terms are lightweight (one or two sittings); `P2` terms are
    /// loaded and point to one to four write-ups.
    PrereqType {
        P1 => "P1",
        P2 => "P2",
    }
);

keyword_enum!(PageStatus {
    Draft => "Draft",
    Published => "Published",
});

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binding: Option<FamilySpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Property {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<ColorCode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Remark {
    pub author: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrerequisiteBox {
    pub declared_type: PrereqType,
    pub terms: Vec<String>,
}

/// One portal entry: a special graph, a graph class or another combinatorial
/// object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalPage {
    pub id: PageId,
    pub title: String,
    pub kind: PageKind,
    pub status: PageStatus,
    /// Page-level color; properties without their own color inherit it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<ColorCode>,
    #[serde(default)]
    pub definition: String,
    #[serde(default)]
    pub figures: Vec<String>,
    #[serde(default)]
    pub constructions: Vec<Construction>,
    #[serde(default)]
    pub properties: Vec<Property>,
    #[serde(default)]
    pub related: Vec<PageId>,
    #[serde(default)]
    pub more_to_explore: Vec<Reference>,
    #[serde(default)]
    pub historical_notes: String,
    #[serde(default)]
    pub remarks: Vec<Remark>,
    #[serde(default)]
    pub prereq_boxes: Vec<PrerequisiteBox>,
    /// Free-text list of allowable prerequisite courses. Data only.
    #[serde(default)]
    pub prerequisite_courses: Vec<String>,
    /// Cached verification results, e.g. `vertices -> 30`.
    #[serde(default)]
    pub computed: BTreeMap<String, String>,
}

impl LogicalPage {
    pub fn new(id: PageId, title: impl Into<String>, kind: PageKind) -> Self {
        Self {
            id,
            title: title.into(),
            kind,
            status: PageStatus::Draft,
            color: None,
            definition: String::new(),
            figures: Vec::new(),
            constructions: Vec::new(),
            properties: Vec::new(),
            related: Vec::new(),
            more_to_explore: Vec::new(),
            historical_notes: String::new(),
            remarks: Vec::new(),
            prereq_boxes: Vec::new(),
            prerequisite_courses: Vec::new(),
            computed: BTreeMap::new(),
        }
    }

    pub fn is_published(&self) -> bool {
        self.status == PageStatus::Published
    }

    pub fn is_in_course(&self) -> bool {
        self.color == Some(ColorCode::InCourse)
    }

    /// Effective color of property `i`.
    pub fn property_color(&self, i: usize) -> Option<ColorCode> {
        self.properties.get(i).and_then(|p| p.color.or(self.color))
    }

    /// Prerequisite terms across all boxes, first occurrence wins,
    /// compared case-insensitively.
    pub fn prerequisite_terms(&self) -> Vec<(&str, PrereqType)> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for b in &self.prereq_boxes {
            for t in &b.terms {
                if seen.insert(t.to_lowercase()) {
                    out.push((t.as_str(), b.declared_type));
                }
            }
        }
        out
    }
}

/// All pages, keyed and ordered by id.
pub type PageIndex = BTreeMap<PageId, LogicalPage>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn page_ids() {
        assert!("ACGT-000001".parse::<PageId>().is_ok());
        assert!("ACGT-00001".parse::<PageId>().is_err());
        assert!("acgt-000001".parse::<PageId>().is_err());
        assert!("ACGT-00000x".parse::<PageId>().is_err());
        assert_eq!(PageId::from_number(42).to_string(), "ACGT-000042");
        assert_eq!(PageId::from_number(42).number(), 42);
        assert!(serde_json::from_str::<PageId>("\"ACGT-1\"").is_err());
    }

    #[test]
    fn keywords_round_trip() {
        for c in ColorCode::ALL {
            assert_eq!(c.as_str().parse::<ColorCode>().unwrap(), *c);
        }
        assert!("green".parse::<ColorCode>().is_err());
        assert_eq!(serde_json::to_string(&PageKind::GraphClass).unwrap(), "\"graph-class\"");
    }

    #[test]
    fn property_color_inherits_page_default() {
        let mut p = LogicalPage::new(PageId::from_number(1), "t", PageKind::SpecialGraph);
        p.properties.push(Property { text: "x".into(), color: None });
        assert_eq!(p.property_color(0), None);
        p.color = Some(ColorCode::InCourse);
        assert_eq!(p.property_color(0), Some(ColorCode::InCourse));
        assert!(p.is_in_course());
    }
}
