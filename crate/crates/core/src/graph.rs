//! Finite simple undirected graphs with optional exact edge weights.
//!
//! A [`Graph`] is built through a checked constructor and is immutable
//! afterwards. Edges are kept as `(u, v)` pairs with `u < v`, sorted, so two
//! graphs built from the same edge set compare equal regardless of insertion
//! order.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {u}-{v} references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge {0}-{1} has a non-positive weight")]
    NonPositiveWeight(usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    labels: Option<Vec<String>>,
    edges: Vec<(usize, usize)>,
    /// Aligned with `edges` when present.
    weights: Option<Vec<BigRational>>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            labels: None,
            edges: Vec::new(),
            weights: None,
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            normalized.push(normalize(n, u, v)?);
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            labels: None,
            edges: normalized,
            weights: None,
            adjacency,
        })
    }

    /// Builds a weighted graph; every edge must carry a weight `> 0`.
    pub fn from_weighted_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, BigRational)>,
    {
        let mut items = Vec::new();
        for (u, v, w) in edges {
            let (a, b) = normalize(n, u, v)?;
            if !w.is_positive() {
                return Err(GraphError::NonPositiveWeight(a, b));
            }
            items.push(((a, b), w));
        }
        items.sort_by(|x, y| x.0.cmp(&y.0));
        let mut graph = Self::from_edges(n, items.iter().map(|(e, _)| *e))?;
        graph.weights = Some(items.into_iter().map(|(_, w)| w).collect());
        Ok(graph)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Drops weights, keeping the edge set.
    pub fn unweighted(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Weight of edge `u-v`; unweighted graphs report `1` for every edge.
    pub fn weight(&self, u: usize, v: usize) -> Option<BigRational> {
        let key = if u < v { (u, v) } else { (v, u) };
        let idx = self.edges.binary_search(&key).ok()?;
        Some(match &self.weights {
            Some(w) => w[idx].clone(),
            None => BigRational::one(),
        })
    }

    /// Iterates `(u, v, weight)`; weight is `1` on unweighted graphs.
    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, BigRational)> + '_ {
        self.edges.iter().enumerate().map(move |(i, &(u, v))| {
            let w = match &self.weights {
                Some(w) => w[i].clone(),
                None => BigRational::one(),
            };
            (u, v, w)
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        self.adjacency.iter().all(|a| a.len() == k)
    }

    /// One traversal from vertex 0 reaches every vertex. Vacuously true for
    /// graphs with at most one vertex.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.n
    }

    /// Renames vertex `v` to `perm[v]`. Labels and weights follow their
    /// vertices and edges.
    ///
    /// # Panics
    ///
    /// If `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut seen = vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut out = match &self.weights {
            Some(_) => Graph::from_weighted_edges(
                self.n,
                self.weighted_edges().map(|(u, v, w)| (perm[u], perm[v], w)),
            ),
            None => Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v]))),
        }
        .expect("relabeling preserves simplicity");
        if let Some(labels) = &self.labels {
            let mut moved = vec![String::new(); self.n];
            for (v, label) in labels.iter().enumerate() {
                moved[perm[v]] = label.clone();
            }
            out.labels = Some(moved);
        }
        out
    }

    /// Renders the edge-list exchange format: a `n m` header followed by one
    /// `u v` line per edge, with a third weight column on weighted graphs.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (u, v, w) in self.weighted_edges() {
            if self.weights.is_some() {
                let _ = writeln!(out, "{u} {v} {}", format_rational(&w));
            } else {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        out
    }

    /// Parses the edge-list exchange format. Weights may be integers, exact
    /// decimals (`0.25`) or fractions (`p/q`); either every edge carries a
    /// weight or none does.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let n = parse_usize(parts.next(), header_line, "vertex count")?;
        let m = parse_usize(parts.next(), header_line, "edge count")?;
        if parts.next().is_some() {
            return Err(parse_err(header_line, "header has extra fields"));
        }

        let mut plain = Vec::new();
        let mut weighted = Vec::new();
        for (line, content) in lines {
            let fields: Vec<&str> = content.split_whitespace().collect();
            let u = parse_usize(fields.first().copied(), line, "endpoint")?;
            let v = parse_usize(fields.get(1).copied(), line, "endpoint")?;
            match fields.len() {
                2 => plain.push((u, v)),
                3 => {
                    let w = parse_rational(fields[2])
                        .ok_or_else(|| parse_err(line, format!("bad weight `{}`", fields[2])))?;
                    weighted.push((u, v, w));
                }
                _ => return Err(parse_err(line, "expected `u v` or `u v weight`")),
            }
        }
        if !plain.is_empty() && !weighted.is_empty() {
            return Err(parse_err(header_line, "weights must be given on all edges or none"));
        }
        let found = plain.len() + weighted.len();
        if found != m {
            return Err(parse_err(
                header_line,
                format!("header announces {m} edges, found {found}"),
            ));
        }
        if weighted.is_empty() {
            Graph::from_edges(n, plain)
        } else {
            Graph::from_weighted_edges(n, weighted)
        }
    }
}

fn normalize(n: usize, u: usize, v: usize) -> Result<(usize, usize), GraphError> {
    if u >= n || v >= n {
        return Err(GraphError::VertexOutOfRange { u, v, n });
    }
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    Ok(if u < v { (u, v) } else { (v, u) })
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(field: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let field = field.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    field
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{field}`")))
}

/// Parses `p`, `p/q` or an exact decimal such as `-1.125` into a rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num).ok()?;
        let den = BigInt::from_str(den).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    if negative {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(num, den))
}

/// `p` when the denominator is one, `p/q` otherwise.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert_eq!(
            Graph::from_weighted_edges(2, [(0, 1, r(0, 1))]),
            Err(GraphError::NonPositiveWeight(0, 1))
        );
    }

    #[test]
    fn edges_are_normalized_and_sorted() {
        let g = Graph::from_edges(4, [(3, 0), (2, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.neighbors(0), &[1, 3]);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(!Graph::empty(2).is_connected());
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2"), Some(r(1, 2)));
        assert_eq!(parse_rational("0.25"), Some(r(1, 4)));
        assert_eq!(parse_rational("3"), Some(r(3, 1)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        assert_eq!(parse_rational("-1.5"), Some(r(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1e3"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn edge_list_round_trip_weighted() {
        let g = Graph::from_weighted_edges(3, [(0, 1, r(1, 2)), (1, 2, r(3, 1))]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "3 2\n0 1 1/2\n1 2 3\n");
        assert_eq!(Graph::from_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = Graph::from_edge_list("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }));
        let err = Graph::from_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
        let err = Graph::from_edge_list("3 2\n0 1 2\n1 2\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { .. }));
        let err = Graph::from_edge_list("3 1\n0 1 -2\n").unwrap_err();
        assert_eq!(err, GraphError::NonPositiveWeight(0, 1));
    }

    #[test]
    fn relabel_moves_labels() {
        let g = Graph::from_edges(3, [(0, 1)])
            .unwrap()
            .with_labels(vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let h = g.relabel(&[2, 0, 1]);
        assert_eq!(h.edges(), &[(0, 2)]);
        assert_eq!(h.labels().unwrap(), &["b", "c", "a"]);
    }
}
