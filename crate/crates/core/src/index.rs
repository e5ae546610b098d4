//! Wiener index and Hosoya–Wiener polynomial, in exact arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{all_pairs_bfs, all_pairs_floyd_warshall};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("graph is disconnected; distance indexes are undefined")]
    Disconnected,
    #[error("graph is weighted; use the weighted variant")]
    Weighted,
}

/// Sum of hop distances over unordered vertex pairs.
pub fn wiener(g: &Graph) -> Result<BigInt, IndexError> {
    if g.is_weighted() {
        return Err(IndexError::Weighted);
    }
    let d = all_pairs_bfs(g);
    let mut total: u128 = 0;
    for (_, _, dist) in d.pairs() {
        total += u128::from(*dist.ok_or(IndexError::Disconnected)?);
    }
    Ok(BigInt::from(total))
}

/// Sum of weighted shortest-path distances over unordered pairs. Unweighted
/// graphs count each edge as `1`.
pub fn weighted_wiener(g: &Graph) -> Result<BigRational, IndexError> {
    let d = all_pairs_floyd_warshall(g);
    let mut total = BigRational::zero();
    for (_, _, dist) in d.pairs() {
        total += dist.ok_or(IndexError::Disconnected)?;
    }
    Ok(total)
}

/// `n * 4^(n-1)`, the conjectured Wiener index of the `n`-cube.
pub fn hypercube_wiener_formula(n: u32) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    BigInt::from(n) * num_traits::pow(BigInt::from(4), (n - 1) as usize)
}

/// Coefficient `c_d` counts unordered vertex pairs at distance exactly `d`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HosoyaWiener {
    pub coeffs: BTreeMap<u32, BigInt>,
}

impl HosoyaWiener {
    /// `sum d * c_d`, which is the Wiener index.
    pub fn derivative_at_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&d, c)| BigInt::from(d) * c)
            .fold(BigInt::zero(), |a, b| a + b)
    }

    /// `sum c_d`, the number of unordered pairs.
    pub fn pair_count(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn coefficient(&self, d: u32) -> BigInt {
        self.coeffs.get(&d).cloned().unwrap_or_default()
    }
}

/// Prints `c_1 t + c_2 t^2 + ...`; the zero polynomial prints as `0`.
impl fmt::Display for HosoyaWiener {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match *d {
                1 => write!(f, "{c} t")?,
                _ => write!(f, "{c} t^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn hosoya_wiener(g: &Graph) -> Result<HosoyaWiener, IndexError> {
    if g.is_weighted() {
        return Err(IndexError::Weighted);
    }
    let d = all_pairs_bfs(g);
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for (_, _, dist) in d.pairs() {
        *counts.entry(*dist.ok_or(IndexError::Disconnected)?).or_insert(0) += 1;
    }
    Ok(HosoyaWiener {
        coeffs: counts.into_iter().map(|(d, c)| (d, BigInt::from(c))).collect(),
    })
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
