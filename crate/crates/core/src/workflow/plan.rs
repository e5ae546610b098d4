//! Exercise-mix planning from group percentages.
//!
//! Each group has a propensity row over the five problem types. The raw
//! share of a type is the percentage-weighted sum of its column; counts come
//! from largest-remainder rounding of `share * total`, after which any type
//! left at zero (when `total >= 5`) takes one exercise from the largest
//! count.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::grades::Group;
use super::WorkflowError;
use crate::graph::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemType {
    A,
    B,
    C,
    D,
    E,
}

impl ProblemType {
    pub const ALL: [ProblemType; 5] = [ProblemType::A, ProblemType::B, ProblemType::C, ProblemType::D, ProblemType::E];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn description(self) -> &'static str {
        match self {
            ProblemType::A => "routine, solvable by most of the class",
            ProblemType::B => "needs some insight",
            ProblemType::C => "multi-step or proof-based",
            ProblemType::D => "open-ended or conjecture-forming",
            ProblemType::E => "contest level",
        }
    }
}

impl fmt::Display for ProblemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Rows are groups 1..3, columns are problem types a..e, in percent. Each
/// row sums to 100.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropensityMatrix {
    pub rows: [[u32; 5]; 3],
}

impl Default for PropensityMatrix {
    fn default() -> Self {
        Self {
            rows: [[10, 25, 25, 20, 20], [30, 25, 25, 10, 10], [60, 15, 15, 5, 5]],
        }
    }
}

impl PropensityMatrix {
    pub fn new(rows: [[u32; 5]; 3]) -> Result<Self, WorkflowError> {
        if rows.iter().any(|r| r.iter().sum::<u32>() != 100) {
            return Err(WorkflowError::InvalidPercentages("propensity rows must sum to 100".into()));
        }
        Ok(Self { rows })
    }

    fn entry(&self, g: Group, t: ProblemType) -> BigRational {
        BigRational::new(self.rows[g.index()][t as usize].into(), 100.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExercisePlan {
    pub total: u64,
    pub counts: BTreeMap<ProblemType, u64>,
}

impl ExercisePlan {
    pub fn count(&self, t: ProblemType) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }
}

impl fmt::Display for ExercisePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.total.to_string().len().max(5);
        writeln!(f, "type  {:>width$}  description", "count")?;
        for t in ProblemType::ALL {
            writeln!(f, "{:<4}  {:>width$}  {}", t.letter(), self.count(t), t.description())?;
        }
        write!(f, "total {:>width$}", self.total)
    }
}

/// Parses `g1,g2,g3` as exact rationals (`0.5`, `1/3`, `2`).
pub fn parse_percentages(text: &str) -> Result<[BigRational; 3], WorkflowError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(WorkflowError::InvalidPercentages(format!("expected three values, got {}", parts.len())));
    }
    let parse = |s: &str| parse_rational(s).ok_or_else(|| WorkflowError::InvalidPercentages(format!("bad value `{s}`")));
    Ok([parse(parts[0])?, parse(parts[1])?, parse(parts[2])?])
}

pub fn plan_exercises(pcts: &[BigRational; 3], total: u64) -> Result<ExercisePlan, WorkflowError> {
    plan_exercises_with(&PropensityMatrix::default(), pcts, total)
}

pub fn plan_exercises_with(
    matrix: &PropensityMatrix,
    pcts: &[BigRational; 3],
    total: u64,
) -> Result<ExercisePlan, WorkflowError> {
    if total == 0 {
        return Err(WorkflowError::InvalidTotal("total must be positive".into()));
    }
    if pcts.iter().any(Signed::is_negative) {
        return Err(WorkflowError::InvalidPercentages("values must be nonnegative".into()));
    }
    let sum: BigRational = pcts.iter().sum();
    if sum != BigRational::from_integer(1.into()) {
        return Err(WorkflowError::InvalidPercentages(format!("values sum to {sum}, not 1")));
    }

    let total_q = BigRational::from_integer(BigInt::from(total));
    let mut floors = [0u64; 5];
    let mut rems: [BigRational; 5] = Default::default();
    for t in ProblemType::ALL {
        let share: BigRational = Group::ALL.iter().map(|&g| &pcts[g.index()] * matrix.entry(g, t)).sum();
        let quota = share * &total_q;
        let (q, r) = quota.numer().div_mod_floor(quota.denom());
        floors[t as usize] = q.to_u64().expect("quota within total");
        rems[t as usize] = BigRational::new(r, quota.denom().clone());
    }
    let mut counts = floors;
    let left = total - floors.iter().sum::<u64>();
    let mut order: Vec<usize> = (0..5).collect();
    order.sort_by(|&i, &j| rems[j].cmp(&rems[i]).then(floors[i].cmp(&floors[j])).then(i.cmp(&j)));
    for &i in order.iter().take(left as usize) {
        debug_assert!(!rems[i].is_zero());
        counts[i] += 1;
    }

    if total >= 5 {
        while let Some(empty) = counts.iter().position(|&c| c == 0) {
            // Largest count donates; among equals the later type gives way.
            let donor = (0..5).max_by_key(|&i| (counts[i], i)).expect("five types");
            counts[donor] -= 1;
            counts[empty] += 1;
        }
    }

    Ok(ExercisePlan {
        total,
        counts: ProblemType::ALL.into_iter().zip(counts).collect(),
    })
}
