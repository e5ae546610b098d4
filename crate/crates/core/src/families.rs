//! Named graph families, each with a fixed vertex numbering so that edge-list
//! exports are stable across runs.
//!
//! | family | numbering |
//! |---|---|
//! | `complete(n)` | `0..n` |
//! | `complete-bipartite(m, n)` | parts `0..m` and `m..m+n` |
//! | `cycle(m)` | `i ~ i+1 (mod m)` |
//! | `star(n)` = K<sub>1,n</sub> | hub `0`, leaves `1..=n` |
//! | `ladder(n)` = P<sub>n</sub> □ K<sub>2</sub> | rails `0..n` and `n..2n`, rung `i ~ n+i` |
//! | `hypercube(n)` | vertex `i` is the binary word `i` |
//! | `wheel(n)` | hub `0`, rim cycle `1..n` |
//! | `gear(n)` | as `wheel(n)`, rim edge `i~i+1` subdivided by `n-1+i` |
//! | `petersen` | outer `0..5`, spokes `i ~ i+5`, inner pentagram |
//! | `odd(n)` | `(n-1)`-subsets of `{1..2n-1}` in lexicographic order |
//! | `fibonacci-tree(n)` | preorder: root, left `T(n-1)`, right `T(n-2)` |
//! | `block(n)`, `extended-block(n)` | copy 1, its new vertex, copy 2, its new vertex |
//! | `gk-open(k)`, `gk-closed(k)` | base square `0..4`, then 16 vertices per level |

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter for {family}: {message}")]
    InvalidParameter { family: String, message: String },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
}

fn invalid(family: Family, message: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameter {
        family: family.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Complete,
    CompleteBipartite,
    Cycle,
    Star,
    Ladder,
    Hypercube,
    Wheel,
    Gear,
    Petersen,
    Odd,
    FibonacciTree,
    Block,
    ExtendedBlock,
    GkOpen,
    GkClosed,
}

impl Family {
    pub const ALL: [Family; 15] = [
        Family::Complete,
        Family::CompleteBipartite,
        Family::Cycle,
        Family::Star,
        Family::Ladder,
        Family::Hypercube,
        Family::Wheel,
        Family::Gear,
        Family::Petersen,
        Family::Odd,
        Family::FibonacciTree,
        Family::Block,
        Family::ExtendedBlock,
        Family::GkOpen,
        Family::GkClosed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete-bipartite",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Ladder => "ladder",
            Family::Hypercube => "hypercube",
            Family::Wheel => "wheel",
            Family::Gear => "gear",
            Family::Petersen => "petersen",
            Family::Odd => "odd",
            Family::FibonacciTree => "fibonacci-tree",
            Family::Block => "block",
            Family::ExtendedBlock => "extended-block",
            Family::GkOpen => "gk-open",
            Family::GkClosed => "gk-closed",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::Petersen => 0,
            Family::CompleteBipartite => 2,
            _ => 1,
        }
    }

    /// Inclusive bounds for each parameter. Upper bounds keep instances
    /// within memory; lower bounds are the family's definition.
    fn bounds(self) -> (u64, u64) {
        match self {
            Family::Complete => (1, 2_000),
            Family::CompleteBipartite => (1, 2_000),
            Family::Cycle => (3, 1_000_000),
            Family::Star => (1, 1_000_000),
            Family::Ladder => (1, 500_000),
            Family::Hypercube => (1, 20),
            Family::Wheel => (4, 1_000_000),
            Family::Gear => (4, 500_000),
            Family::Petersen => (0, 0),
            Family::Odd => (2, 10),
            Family::FibonacciTree => (1, 25),
            Family::Block | Family::ExtendedBlock => (1, 16),
            Family::GkOpen | Family::GkClosed => (1, 50_000),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// A family name plus its integer parameters, e.g. `wheel 5` or
/// `complete-bipartite 2,3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<u64>,
}

impl FamilySpec {
    pub fn new(family: Family, params: impl Into<Vec<u64>>) -> Self {
        Self {
            family,
            params: params.into(),
        }
    }

    /// Checks arity and ranges without building anything.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let family = self.family;
        if self.params.len() != family.arity() {
            return Err(invalid(
                family,
                format!(
                    "expected {} parameter(s), got {}",
                    family.arity(),
                    self.params.len()
                ),
            ));
        }
        let (lo, hi) = family.bounds();
        for &p in &self.params {
            if p < lo || p > hi {
                return Err(invalid(family, format!("{p} outside {lo}..={hi}")));
            }
        }
        Ok(())
    }

    /// Parses a comma- or whitespace-separated parameter list.
    pub fn parse(family: &str, params: &str) -> Result<Self, FamilyError> {
        let family: Family = family.parse()?;
        let params = params
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| invalid(family, format!("`{s}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let spec = FamilySpec { family, params };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (i, p) in self.params.iter().enumerate() {
            write!(f, "{}{p}", if i == 0 { " " } else { "," })?;
        }
        Ok(())
    }
}

/// Builds the canonical instance of `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    spec.validate()?;
    let p = |i: usize| spec.params[i] as usize;
    match spec.family {
        Family::Complete => complete(p(0)),
        Family::CompleteBipartite => complete_bipartite(p(0), p(1)),
        Family::Cycle => cycle(p(0)),
        Family::Star => star(p(0)),
        Family::Ladder => ladder(p(0)),
        Family::Hypercube => hypercube(p(0) as u32),
        Family::Wheel => wheel(p(0)),
        Family::Gear => gear(p(0)),
        Family::Petersen => Ok(petersen()),
        Family::Odd => odd(p(0)),
        Family::FibonacciTree => fibonacci_tree(p(0)),
        Family::Block => block_family(p(0)),
        Family::ExtendedBlock => extended_block_family(p(0)),
        Family::GkOpen => g_family(p(0), false),
        Family::GkClosed => g_family(p(0), true),
    }
}

fn check(family: Family, value: usize) -> Result<(), FamilyError> {
    let (lo, hi) = family.bounds();
    if (value as u64) < lo || (value as u64) > hi {
        return Err(invalid(family, format!("{value} outside {lo}..={hi}")));
    }
    Ok(())
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("family constructions are simple graphs")
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    check(Family::Complete, n)?;
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(build(n, edges))
}

pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, FamilyError> {
    check(Family::CompleteBipartite, m)?;
    check(Family::CompleteBipartite, n)?;
    let edges = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))).collect();
    Ok(build(m + n, edges))
}

pub fn cycle(m: usize) -> Result<Graph, FamilyError> {
    check(Family::Cycle, m)?;
    Ok(build(m, (0..m).map(|i| (i, (i + 1) % m)).collect()))
}

/// `S_n = K_{1,n}`: `n` leaves around a hub.
pub fn star(n: usize) -> Result<Graph, FamilyError> {
    check(Family::Star, n)?;
    Ok(build(n + 1, (1..=n).map(|v| (0, v)).collect()))
}

/// `L_n = P_n □ K_2`: `2n` vertices, `3n - 2` edges.
pub fn ladder(n: usize) -> Result<Graph, FamilyError> {
    check(Family::Ladder, n)?;
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, n + i));
        if i + 1 < n {
            edges.push((i, i + 1));
            edges.push((n + i, n + i + 1));
        }
    }
    Ok(build(2 * n, edges))
}

pub fn hypercube(n: u32) -> Result<Graph, FamilyError> {
    check(Family::Hypercube, n as usize)?;
    let size = 1usize << n;
    let mut edges = Vec::with_capacity(size * n as usize / 2);
    for v in 0..size {
        for bit in 0..n {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    let labels = (0..size).map(|v| format!("{v:0width$b}", width = n as usize)).collect();
    Ok(build(size, edges).with_labels(labels).expect("one label per word"))
}

/// `W_n`: a hub joined to every vertex of `C_{n-1}`.
pub fn wheel(n: usize) -> Result<Graph, FamilyError> {
    check(Family::Wheel, n)?;
    let rim = n - 1;
    let mut edges = Vec::with_capacity(2 * rim);
    for i in 1..=rim {
        edges.push((0, i));
        edges.push((i, i % rim + 1));
    }
    Ok(build(n, edges))
}

/// The wheel `W_n` with every rim edge subdivided once.
pub fn gear(n: usize) -> Result<Graph, FamilyError> {
    check(Family::Gear, n)?;
    let rim = n - 1;
    let mut edges = Vec::with_capacity(3 * rim);
    for i in 1..=rim {
        let mid = n - 1 + i;
        edges.push((0, i));
        edges.push((i, mid));
        edges.push((mid, i % rim + 1));
    }
    Ok(build(2 * n - 1, edges))
}

pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, edges)
}

/// `O_n`: one vertex per `(n-1)`-subset of `{1, ..., 2n-1}`, adjacent when
/// disjoint. Labels spell the subset, e.g. `{1,3}`.
pub fn odd(n: usize) -> Result<Graph, FamilyError> {
    check(Family::Odd, n)?;
    let ground = 2 * n - 1;
    let k = n - 1;
    let subsets = k_subsets(ground, k);
    let index: HashMap<u32, usize> = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let full = (1u32 << ground) - 1;
    let mut edges = Vec::with_capacity(subsets.len() * n / 2);
    for (i, &s) in subsets.iter().enumerate() {
        // Disjoint (n-1)-subsets are the complement minus one element.
        let complement = full & !s;
        let mut rest = complement;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let j = index[&(complement & !bit)];
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let labels = subsets
        .iter()
        .map(|&s| {
            let items: Vec<String> = (0..ground)
                .filter(|b| s & (1 << b) != 0)
                .map(|b| (b + 1).to_string())
                .collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    Ok(build(subsets.len(), edges)
        .with_labels(labels)
        .expect("one label per subset"))
}

/// Bitmasks of all `k`-subsets of `{0..ground}`, in lexicographic order of
/// their sorted element lists.
fn k_subsets(ground: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, ground: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<u32>) {
        if current.len() == k {
            out.push(current.iter().fold(0, |m, &b| m | (1 << b)));
            return;
        }
        let needed = k - current.len();
        for b in start..=ground - needed {
            current.push(b);
            rec(b + 1, ground, k, current, out);
            current.pop();
        }
    }
    rec(0, ground, k, &mut current, &mut out);
    out
}

/// `T_1 = T_2 =` a single vertex; `T_n` is a root whose subtrees are
/// `T_{n-1}` and `T_{n-2}`.
pub fn fibonacci_tree(n: usize) -> Result<Graph, FamilyError> {
    check(Family::FibonacciTree, n)?;
    fn rec(order: usize, next: &mut usize, edges: &mut Vec<(usize, usize)>) -> usize {
        let root = *next;
        *next += 1;
        if order > 2 {
            let left = rec(order - 1, next, edges);
            edges.push((root, left));
            let right = rec(order - 2, next, edges);
            edges.push((root, right));
        }
        root
    }
    let mut next = 0;
    let mut edges = Vec::new();
    rec(n, &mut next, &mut edges);
    Ok(build(next, edges))
}

/// Vertex names of the basic block, root first.
const BASIC_NAMES: [&str; 7] = ["r", "A", "B", "C", "D", "E", "F"];
const BASIC_EDGES: [(&str, &str); 10] = [
    ("r", "A"),
    ("r", "B"),
    ("A", "C"),
    ("A", "D"),
    ("B", "E"),
    ("B", "F"),
    ("C", "D"),
    ("C", "E"),
    ("D", "F"),
    ("E", "F"),
];
const EXTENSION_NAMES: [&str; 8] = ["G", "H", "I", "J", "K", "L", "M", "N"];
const EXTENSION_REMOVED: [(&str, &str); 4] = [("C", "D"), ("C", "E"), ("D", "F"), ("E", "F")];
// `KLMN` in the level-two edge list reads as the two edges KL and MN.
const EXTENSION_ADDED: [(&str, &str); 16] = [
    ("C", "G"),
    ("C", "H"),
    ("D", "I"),
    ("D", "J"),
    ("E", "K"),
    ("E", "L"),
    ("F", "M"),
    ("F", "N"),
    ("G", "H"),
    ("I", "J"),
    ("K", "L"),
    ("M", "N"),
    ("G", "I"),
    ("H", "J"),
    ("K", "M"),
    ("L", "N"),
];

fn named_graph(names: &[&str], edges: &[(&str, &str)]) -> Graph {
    let at = |name: &str| names.iter().position(|n| *n == name).expect("known vertex");
    build(names.len(), edges.iter().map(|&(a, b)| (at(a), at(b))).collect())
        .with_labels(names.iter().map(|s| s.to_string()).collect())
        .expect("one label per vertex")
}

/// The seven-vertex basic block rooted at `r` (vertex 0).
pub fn basic_block() -> Graph {
    named_graph(&BASIC_NAMES, &BASIC_EDGES)
}

/// The basic block with the extra level `G..N`: 15 vertices, root `r` of
/// degree 2, every other vertex of degree 3.
pub fn extended_basic_block() -> Graph {
    let names: Vec<&str> = BASIC_NAMES.iter().chain(EXTENSION_NAMES.iter()).copied().collect();
    let edges: Vec<(&str, &str)> = BASIC_EDGES
        .iter()
        .filter(|e| !EXTENSION_REMOVED.contains(e))
        .chain(EXTENSION_ADDED.iter())
        .copied()
        .collect();
    named_graph(&names, &edges)
}

/// `block_n` built from the basic block.
pub fn block_family(n: usize) -> Result<Graph, FamilyError> {
    check(Family::Block, n)?;
    Ok(doubling_family(&basic_block(), n))
}

/// `block_n` built from the extended basic block.
pub fn extended_block_family(n: usize) -> Result<Graph, FamilyError> {
    check(Family::ExtendedBlock, n)?;
    Ok(doubling_family(&extended_basic_block(), n))
}

/// Level 1 joins two copies of `block` by their roots. Each later level takes
/// two copies of the previous graph, subdivides the most recent joining edge
/// in each copy by a new vertex, and joins the two new vertices.
fn doubling_family(block: &Graph, levels: usize) -> Graph {
    let base = block.vertex_count();
    let base_labels = block.labels().expect("blocks are labeled");
    let mut labels: Vec<String> = (1..=2)
        .flat_map(|c| base_labels.iter().map(move |l| format!("{l}_{c}")))
        .collect();
    let mut edges: Vec<(usize, usize)> = block
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (u + base, v + base)])
        .collect();
    edges.push((0, base));
    let mut join = (0, base);
    let mut n = 2 * base;

    for level in 2..=levels {
        let name = subdivision_name(level - 1);
        let mut next_edges = Vec::with_capacity(2 * edges.len() + 3);
        let mut next_labels = Vec::with_capacity(2 * n + 2);
        let mut mids = [0; 2];
        for (c, mid) in mids.iter_mut().enumerate() {
            let offset = c * (n + 1);
            *mid = offset + n;
            next_edges.extend(
                edges
                    .iter()
                    .filter(|&&e| e != join)
                    .map(|&(u, v)| (u + offset, v + offset)),
            );
            next_edges.push((join.0 + offset, *mid));
            next_edges.push((join.1 + offset, *mid));
            next_labels.extend(labels.iter().map(|l| format!("{l}_{}", c + 1)));
            next_labels.push(format!("{name}_{}", c + 1));
        }
        next_edges.push((mids[0], mids[1]));
        join = (mids[0], mids[1]);
        edges = next_edges;
        labels = next_labels;
        n = 2 * n + 2;
    }
    build(n, edges).with_labels(labels).expect("one label per vertex")
}

fn subdivision_name(level: usize) -> String {
    match level {
        1 => "x".into(),
        2 => "y".into(),
        3 => "z".into(),
        _ => format!("s{level}"),
    }
}

/// The `G_k` family on `16k + 4` vertices.
///
/// The base is a square `0-1-2-3` with both diagonals, so its corners start
/// as degree-3 ports. Each level attaches one new square `q0 q1 q2 q3` per
/// port `p`, with edge `p-q0`, chord `q1-q3`, and bracing edges
/// `q1(i)-q3(i+1)` and `q2(i)-q0(i+1)` between cyclically consecutive
/// squares. Afterwards every old vertex has degree 4 and the four `q2`
/// corners are the new degree-3 ports. `closed` adds the port pairings
/// `q2(0)-q2(2)` and `q2(1)-q2(3)`, making the graph 4-regular.
pub fn g_family(k: usize, closed: bool) -> Result<Graph, FamilyError> {
    let family = if closed { Family::GkClosed } else { Family::GkOpen };
    check(family, k)?;
    let n = 16 * k + 4;
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)];
    let mut labels: Vec<String> = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
    let mut ports = [0, 1, 2, 3];
    for level in 1..=k {
        let first = 4 + 16 * (level - 1);
        let q = |square: usize, corner: usize| first + 4 * (square % 4) + corner;
        for (i, &port) in ports.iter().enumerate() {
            edges.extend([
                (q(i, 0), q(i, 1)),
                (q(i, 1), q(i, 2)),
                (q(i, 2), q(i, 3)),
                (q(i, 3), q(i, 0)),
                (q(i, 1), q(i, 3)),
                (port, q(i, 0)),
                (q(i, 1), q(i + 1, 3)),
                (q(i, 2), q(i + 1, 0)),
            ]);
            for corner in 0..4 {
                labels.push(format!("L{level}.{i}{}", ["a", "b", "c", "d"][corner]));
            }
        }
        ports = [q(0, 2), q(1, 2), q(2, 2), q(3, 2)];
    }
    if closed {
        edges.push((ports[0], ports[2]));
        edges.push((ports[1], ports[3]));
    }
    Ok(build(n, edges).with_labels(labels).expect("one label per vertex"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let k4 = complete(4).unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        let w5 = wheel(5).unwrap();
        assert_eq!((w5.vertex_count(), w5.edge_count(), w5.degree(0)), (5, 8, 4));
        let s3 = star(3).unwrap();
        assert_eq!((s3.vertex_count(), s3.edge_count()), (4, 3));
        let l4 = ladder(4).unwrap();
        assert_eq!((l4.vertex_count(), l4.edge_count()), (8, 10));
        let k23 = complete_bipartite(2, 3).unwrap();
        assert_eq!((k23.vertex_count(), k23.edge_count()), (5, 6));
        let q3 = hypercube(3).unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        assert!(q3.has_edge(0b010, 0b110));
        assert_eq!(q3.labels().unwrap()[5], "101");
    }

    #[test]
    fn gear_counts() {
        for n in 4..12 {
            let g = gear(n).unwrap();
            assert_eq!(g.vertex_count(), 2 * n - 1);
            assert_eq!(g.edge_count(), 3 * (n - 1));
            assert_eq!(g.degree(0), n - 1);
        }
    }

    #[test]
    fn fibonacci_tree_sizes() {
        // |T_n| = |T_{n-1}| + |T_{n-2}| + 1
        let sizes: Vec<usize> = (1..=8).map(|n| fibonacci_tree(n).unwrap().vertex_count()).collect();
        assert_eq!(sizes, vec![1, 1, 3, 5, 9, 15, 25, 41]);
        let t6 = fibonacci_tree(6).unwrap();
        assert_eq!(t6.edge_count(), t6.vertex_count() - 1);
        assert!(t6.is_connected());
    }

    #[test]
    fn odd_graph_shape() {
        let o3 = odd(3).unwrap();
        assert_eq!(o3.vertex_count(), 10);
        assert!(o3.is_k_regular(3));
        assert_eq!(o3.labels().unwrap()[0], "{1,2}");
        // {1,2} ~ {3,4}
        let labels = o3.labels().unwrap();
        let at = |s: &str| labels.iter().position(|l| l == s).unwrap();
        assert!(o3.has_edge(at("{1,2}"), at("{3,4}")));
        assert!(!o3.has_edge(at("{1,2}"), at("{2,3}")));
    }

    #[test]
    fn parameter_errors() {
        assert!(cycle(2).is_err());
        assert!(wheel(3).is_err());
        assert!(odd(1).is_err());
        assert!(hypercube(0).is_err());
        assert!(block_family(0).is_err());
        assert!(g_family(0, true).is_err());
        let bad_arity = FamilySpec::new(Family::CompleteBipartite, vec![3]);
        assert!(matches!(generate(&bad_arity), Err(FamilyError::InvalidParameter { .. })));
        let bad_arity = FamilySpec::new(Family::Petersen, vec![1]);
        assert!(generate(&bad_arity).is_err());
        assert!(matches!(
            FamilySpec::parse("nope", "1"),
            Err(FamilyError::UnknownFamily(_))
        ));
    }

    #[test]
    fn spec_parsing_and_display() {
        let spec = FamilySpec::parse("complete-bipartite", "2,3").unwrap();
        assert_eq!(spec.params, vec![2, 3]);
        assert_eq!(spec.to_string(), "complete-bipartite 2,3");
        assert_eq!(FamilySpec::parse("Petersen", "").unwrap().params, Vec::<u64>::new());
    }

    #[test]
    fn extended_block_removes_inner_edges() {
        let g = extended_basic_block();
        let labels = g.labels().unwrap();
        let at = |s: &str| labels.iter().position(|l| l == s).unwrap();
        assert!(!g.has_edge(at("C"), at("D")));
        assert!(g.has_edge(at("K"), at("L")));
        assert!(g.has_edge(at("M"), at("N")));
        assert!(!g.has_edge(at("L"), at("M")));
    }

    #[test]
    fn block_labels_follow_copies() {
        let g = block_family(2).unwrap();
        let labels = g.labels().unwrap();
        assert_eq!(labels[14], "x_1");
        assert_eq!(labels[29], "x_2");
        assert!(g.has_edge(14, 29));
        assert!(g.has_edge(0, 14) && g.has_edge(7, 14));
        assert!(!g.has_edge(0, 7));
    }
}
