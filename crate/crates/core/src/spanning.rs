//! Spanning trees: exact counting by the matrix-tree theorem and an
//! isomorphism-class census by exhaustive enumeration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::distance::all_pairs_bfs;
use crate::graph::Graph;
use crate::index::wiener;
use crate::iso::are_isomorphic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("graph is disconnected; it has no spanning tree")]
    Disconnected,
    #[error("census limited to {max_vertices} vertices / {max_edges} edges, graph has {n} / {m}")]
    SizeLimitExceeded {
        n: usize,
        m: usize,
        max_vertices: usize,
        max_edges: usize,
    },
}

/// Number of spanning trees: the determinant of the Laplacian with its last
/// row and column removed, by fraction-free (Bareiss) elimination.
/// Disconnected graphs have none.
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    let n = g.vertex_count();
    if n <= 1 {
        return BigInt::one();
    }
    if !g.is_connected() {
        return BigInt::zero();
    }
    let m = n - 1;
    let mut a = vec![vec![BigInt::zero(); m]; m];
    for (v, row) in a.iter_mut().enumerate() {
        row[v] = BigInt::from(g.degree(v));
    }
    for &(u, v) in g.edges() {
        if u < m && v < m {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    bareiss_determinant(a)
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let m = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..m {
        if a[k][k].is_zero() {
            match (k + 1..m).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let value = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = value;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[m - 1][m - 1]
}

/// Size guard for [`spanning_tree_census`]; the defaults cover
/// Petersen-scale inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            max_vertices: 12,
            max_edges: 20,
        }
    }
}

impl CensusOptions {
    pub fn unbounded() -> Self {
        Self {
            max_vertices: usize::MAX,
            max_edges: usize::MAX,
        }
    }
}

/// One isomorphism class of spanning trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusClass {
    /// First tree of the class met during enumeration, on the host's vertices.
    pub tree: Graph,
    pub multiplicity: BigInt,
    pub wiener: BigInt,
}

/// Enumerates every spanning tree of `g` and groups them up to isomorphism.
///
/// Classes are ordered by Wiener index, then by degree sequence, then by
/// first appearance, so the result is deterministic.
pub fn spanning_tree_census(g: &Graph, options: CensusOptions) -> Result<Vec<CensusClass>, CensusError> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n > options.max_vertices || m > options.max_edges {
        return Err(CensusError::SizeLimitExceeded {
            n,
            m,
            max_vertices: options.max_vertices,
            max_edges: options.max_edges,
        });
    }
    if !g.is_connected() {
        return Err(CensusError::Disconnected);
    }

    struct Bucket {
        fingerprint: Fingerprint,
        members: Vec<(Graph, BigInt, BigInt)>,
    }
    let mut buckets: BTreeMap<Fingerprint, Vec<usize>> = BTreeMap::new();
    let mut classes: Vec<Bucket> = Vec::new();

    for_each_spanning_tree(g, |edges| {
        let tree = Graph::from_edges(n, edges.iter().map(|&e| g.edges()[e])).expect("subgraph of a simple graph");
        let fp = fingerprint(&tree);
        let slots = buckets.entry(fp.clone()).or_default();
        for &slot in slots.iter() {
            let class = &mut classes[slot];
            if let Some(member) = class.members.iter_mut().find(|(rep, _, _)| are_isomorphic(rep, &tree)) {
                member.1 += 1;
                return;
            }
        }
        let w = wiener(&tree).expect("spanning trees are connected");
        slots.push(classes.len());
        classes.push(Bucket {
            fingerprint: fp,
            members: vec![(tree, BigInt::one(), w)],
        });
    });

    let mut out: Vec<(Fingerprint, CensusClass)> = classes
        .into_iter()
        .flat_map(|b| {
            let fp = b.fingerprint;
            b.members.into_iter().map(move |(tree, multiplicity, wiener)| {
                (
                    fp.clone(),
                    CensusClass {
                        tree,
                        multiplicity,
                        wiener,
                    },
                )
            })
        })
        .collect();
    out.sort_by(|a, b| a.1.wiener.cmp(&b.1.wiener).then_with(|| a.0.degrees.cmp(&b.0.degrees)));
    Ok(out.into_iter().map(|(_, c)| c).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Fingerprint {
    degrees: Vec<usize>,
    distance_sums: Vec<u64>,
}

fn fingerprint(tree: &Graph) -> Fingerprint {
    let mut degrees = tree.degrees();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let d = all_pairs_bfs(tree);
    let mut distance_sums: Vec<u64> = (0..tree.vertex_count())
        .map(|u| d.row(u).iter().map(|x| u64::from(x.unwrap_or(0))).sum())
        .collect();
    distance_sums.sort_unstable();
    Fingerprint {
        degrees,
        distance_sums,
    }
}

/// Union-find with undo, for the contraction side of the recursion.
struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl RollbackUnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(b);
        true
    }

    fn undo(&mut self) {
        let b = self.history.pop().expect("undo after union");
        let a = self.parent[b];
        self.size[a] -= self.size[b];
        self.parent[b] = b;
    }
}

/// Deletion–contraction over the edges in index order: each edge is either
/// contracted into the tree (if it joins two components) or deleted (if the
/// remaining edges still connect the graph). Every leaf is a spanning tree,
/// visited as a list of edge indices.
pub fn for_each_spanning_tree(g: &Graph, mut visit: impl FnMut(&[usize])) {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return;
    }
    struct State<'a> {
        g: &'a Graph,
        uf: RollbackUnionFind,
        chosen: Vec<usize>,
        deleted: Vec<bool>,
    }
    fn still_connected(g: &Graph, deleted: &[bool]) -> bool {
        let n = g.vertex_count();
        let mut uf = RollbackUnionFind::new(n);
        let mut components = n;
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if !deleted[i] && uf.union(u, v) {
                components -= 1;
            }
        }
        components == 1
    }
    fn rec(state: &mut State<'_>, i: usize, visit: &mut dyn FnMut(&[usize])) {
        let target = state.g.vertex_count() - 1;
        if state.chosen.len() == target {
            visit(&state.chosen);
            return;
        }
        if i == state.g.edge_count() {
            return;
        }
        let (u, v) = state.g.edges()[i];
        if state.uf.union(u, v) {
            state.chosen.push(i);
            rec(state, i + 1, visit);
            state.chosen.pop();
            state.uf.undo();
        }
        state.deleted[i] = true;
        if still_connected(state.g, &state.deleted) {
            rec(state, i + 1, visit);
        }
        state.deleted[i] = false;
    }
    let mut state = State {
        g,
        uf: RollbackUnionFind::new(n),
        chosen: Vec::with_capacity(n - 1),
        deleted: vec![false; g.edge_count()],
    };
    rec(&mut state, 0, &mut visit);
}
