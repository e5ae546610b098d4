//! All-pairs shortest-path distances.
//!
//! Unweighted graphs use one BFS per source and integer distances. Weighted
//! graphs use Floyd–Warshall over exact rationals. Unreachable pairs are
//! `None` in both cases.

use std::collections::VecDeque;

use num_rational::BigRational;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix<T> {
    n: usize,
    d: Vec<Option<T>>,
}

impl<T> DistanceMatrix<T> {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&T> {
        self.d[u * self.n + v].as_ref()
    }

    pub fn row(&self, u: usize) -> &[Option<T>] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    /// Unordered pairs `u < v` with their distance (`None` if unreachable).
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Option<&T>)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.get(u, v))))
    }

    pub fn all_reachable(&self) -> bool {
        self.d.iter().all(Option::is_some)
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> DistanceMatrix<U> {
        DistanceMatrix {
            n: self.n,
            d: self.d.iter().map(|x| x.as_ref().map(&f)).collect(),
        }
    }
}

impl DistanceMatrix<u32> {
    /// Largest finite distance; `None` if some pair is unreachable.
    pub fn diameter(&self) -> Option<u32> {
        self.d.iter().try_fold(0, |acc, x| x.map(|x| acc.max(x)))
    }
}

/// Hop distances from every source by breadth-first search. Edge weights, if
/// any, are ignored.
pub fn all_pairs_bfs(g: &Graph) -> DistanceMatrix<u32> {
    let n = g.vertex_count();
    let mut d = vec![None; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = Some(0);
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let next = row[u].expect("queued vertices have a distance") + 1;
            for &v in g.neighbors(u) {
                if row[v].is_none() {
                    row[v] = Some(next);
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

/// Floyd–Warshall over exact rationals. Unweighted graphs count every edge
/// as weight `1`.
pub fn all_pairs_floyd_warshall(g: &Graph) -> DistanceMatrix<BigRational> {
    let n = g.vertex_count();
    let mut d: Vec<Option<BigRational>> = vec![None; n * n];
    for v in 0..n {
        d[v * n + v] = Some(BigRational::from_integer(0.into()));
    }
    for (u, v, w) in g.weighted_edges() {
        d[u * n + v] = Some(w.clone());
        d[v * n + u] = Some(w);
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i * n + k].clone() else {
                continue;
            };
            for j in 0..n {
                let Some(kj) = &d[k * n + j] else {
                    continue;
                };
                let through = &ik + kj;
                let slot = &mut d[i * n + j];
                if slot.as_ref().is_none_or(|cur| through < *cur) {
                    *slot = Some(through);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}
