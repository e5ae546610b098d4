use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::WorkflowError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Grade {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Grade {
    pub const ALL: [Grade; 6] = [Grade::A, Grade::B, Grade::C, Grade::D, Grade::E, Grade::F];

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Grade {
    type Err = WorkflowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" => Ok(Grade::A),
            "B" => Ok(Grade::B),
            "C" => Ok(Grade::C),
            "D" => Ok(Grade::D),
            "E" => Ok(Grade::E),
            "F" => Ok(Grade::F),
            _ => Err(WorkflowError::InvalidGrade(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Group {
    One = 1,
    Two = 2,
    Three = 3,
}

impl Group {
    pub const ALL: [Group; 3] = [Group::One, Group::Two, Group::Three];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn index(self) -> usize {
        self as usize - 1
    }
}

impl From<Group> for u8 {
    fn from(g: Group) -> u8 {
        g.number()
    }
}

impl TryFrom<u8> for Group {
    type Error = String;

    fn try_from(n: u8) -> Result<Self, String> {
        match n {
            1 => Ok(Group::One),
            2 => Ok(Group::Two),
            3 => Ok(Group::Three),
            _ => Err(format!("no group {n}")),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A,B go to group 1; C,D to 2; E,F to 3.
pub fn assign_group(t: Grade) -> Group {
    match t {
        Grade::A | Grade::B => Group::One,
        Grade::C | Grade::D => Group::Two,
        Grade::E | Grade::F => Group::Three,
    }
}

/// Grade points. The default is A=5 down to F=0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointScale {
    pub points: [u32; 6],
}

impl Default for PointScale {
    fn default() -> Self {
        Self {
            points: [5, 4, 3, 2, 1, 0],
        }
    }
}

impl PointScale {
    pub fn points(&self, g: Grade) -> u32 {
        self.points[g as usize]
    }

    /// Grade nearest to `mean`; an exact tie goes to the better grade.
    pub fn nearest(&self, mean: &BigRational) -> Grade {
        let dist = |g: Grade| {
            let d = BigRational::from_integer(BigInt::from(self.points(g))) - mean;
            if d < BigRational::from_integer(0.into()) {
                -d
            } else {
                d
            }
        };
        let mut best = Grade::A;
        for g in Grade::ALL {
            let (dg, db) = (dist(g), dist(best));
            if dg < db || (dg == db && self.points(g) > self.points(best)) {
                best = g;
            }
        }
        best
    }
}

/// Term grade: mean grade points over the relevant subjects, rounded to the
/// nearest grade with halves rounding up. `None` treats every subject as
/// relevant.
pub fn derive_t(
    grades: &BTreeMap<String, Grade>,
    relevant: Option<&BTreeSet<String>>,
    scale: &PointScale,
) -> Result<Grade, WorkflowError> {
    let picked: Vec<Grade> = grades
        .iter()
        .filter(|(s, _)| relevant.is_none_or(|r| r.contains(*s)))
        .map(|(_, g)| *g)
        .collect();
    if picked.is_empty() {
        return Err(WorkflowError::NoRelevantGrades);
    }
    let sum: u64 = picked.iter().map(|g| u64::from(scale.points(*g))).sum();
    let mean = BigRational::new(sum.into(), (picked.len() as u64).into());
    Ok(scale.nearest(&mean))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grades(pairs: &[(&str, Grade)]) -> BTreeMap<String, Grade> {
        pairs.iter().map(|(s, g)| (s.to_string(), *g)).collect()
    }

    #[test]
    fn group_table() {
        let expected = [1, 1, 2, 2, 3, 3];
        for (g, want) in Grade::ALL.into_iter().zip(expected) {
            assert_eq!(assign_group(g).number(), want, "{g}");
        }
        assert!("G".parse::<Grade>().is_err());
    }

    #[test]
    fn term_grade_rounding() {
        let s = PointScale::default();
        assert_eq!(derive_t(&grades(&[("CGT", Grade::A)]), None, &s).unwrap(), Grade::A);
        let ab = grades(&[("Discrete", Grade::A), ("Algorithms", Grade::B)]);
        assert_eq!(derive_t(&ab, None, &s).unwrap(), Grade::A);
        let ce = grades(&[("X", Grade::C), ("Y", Grade::E)]);
        assert_eq!(derive_t(&ce, None, &s).unwrap(), Grade::D);
        let bcc = grades(&[("X", Grade::B), ("Y", Grade::C), ("Z", Grade::C)]);
        assert_eq!(derive_t(&bcc, None, &s).unwrap(), Grade::C);
    }

    #[test]
    fn relevant_subset() {
        let s = PointScale::default();
        let g = grades(&[("CGT", Grade::F), ("Art", Grade::A)]);
        let rel: BTreeSet<String> = ["CGT".to_string()].into();
        assert_eq!(derive_t(&g, Some(&rel), &s).unwrap(), Grade::F);
        let none: BTreeSet<String> = ["Physics".to_string()].into();
        assert_eq!(derive_t(&g, Some(&none), &s), Err(WorkflowError::NoRelevantGrades));
    }
}
