//! Exact graph isomorphism for small graphs.
//!
//! Vertices are first partitioned by color refinement run on both graphs at
//! once, so a color means the same thing on either side. A backtracking
//! search then maps vertices class by class, checking adjacency against every
//! vertex already placed. Weights and labels are ignored.

use std::collections::BTreeMap;

use crate::graph::Graph;

struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn of(g: &Graph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for &(u, v) in g.edges() {
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        Self { words, bits }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }
}

/// Stable vertex colors for `graphs`, computed on their disjoint union.
pub(crate) fn refine_colors(graphs: &[&Graph]) -> Vec<Vec<usize>> {
    let mut colors: Vec<Vec<usize>> = graphs.iter().map(|g| g.degrees()).collect();
    let mut classes = count_classes(&colors);
    loop {
        let mut signatures: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(graphs.len());
        for (g, col) in graphs.iter().zip(&colors) {
            let sig = (0..g.vertex_count())
                .map(|v| {
                    let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| col[w]).collect();
                    around.sort_unstable();
                    (col[v], around)
                })
                .collect();
            signatures.push(sig);
        }
        let mut ids = BTreeMap::new();
        for sig in signatures.iter().flatten() {
            ids.entry(sig.clone()).or_insert(0usize);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i;
        }
        let next: Vec<Vec<usize>> = signatures
            .iter()
            .map(|sigs| sigs.iter().map(|s| ids[s]).collect())
            .collect();
        let next_classes = ids.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// True iff an adjacency-preserving bijection between the vertex sets exists.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return false;
    }
    if n == 0 {
        return true;
    }

    let colors = refine_colors(&[g1, g2]);
    let (c1, c2) = (&colors[0], &colors[1]);
    let h1 = histogram(c1);
    if h1 != histogram(c2) {
        return false;
    }

    let order = search_order(g1, c1, &h1);
    let mut candidates_by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in c2.iter().enumerate() {
        candidates_by_color.entry(c).or_default().push(v);
    }

    let mut search = Search {
        a1: BitMatrix::of(g1),
        a2: BitMatrix::of(g2),
        c1,
        candidates_by_color,
        order,
        mapping: vec![usize::MAX; n],
        used: vec![false; n],
    };
    search.extend(0)
}

/// Starts from the rarest color, then always picks the vertex with the most
/// already-ordered neighbors so adjacency checks prune early.
fn search_order(g: &Graph, colors: &[usize], hist: &BTreeMap<usize, usize>) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], std::cmp::Reverse(hist[&colors[v]]), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    a1: BitMatrix,
    a2: BitMatrix,
    c1: &'a [usize],
    candidates_by_color: BTreeMap<usize, Vec<usize>>,
    order: Vec<usize>,
    mapping: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let candidates = self.candidates_by_color[&self.c1[v]].clone();
        for w in candidates {
            if self.used[w] || !self.consistent(depth, v, w) {
                continue;
            }
            self.mapping[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.mapping[v] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, v: usize, w: usize) -> bool {
        self.order[..depth].iter().all(|&u| {
            let image = self.mapping[u];
            self.a1.get(u, v) == self.a2.get(image, w)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, petersen};

    #[test]
    fn basic_pairs() {
        assert!(are_isomorphic(&petersen(), &petersen()));
        assert!(!are_isomorphic(&cycle(4).unwrap(), &complete(4).unwrap()));
        assert!(are_isomorphic(&Graph::empty(0), &Graph::empty(0)));
    }

    #[test]
    fn same_degrees_different_structure() {
        // C6 versus two disjoint triangles: both 2-regular on 6 vertices.
        let c6 = cycle(6).unwrap();
        let two_k3 = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic(&c6, &two_k3));
    }

    #[test]
    fn regular_graphs_that_refinement_cannot_split() {
        // The 3-prism and K_{3,3} are both 3-regular on six vertices.
        let prism =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
                .unwrap();
        let k33 = crate::families::complete_bipartite(3, 3).unwrap();
        assert!(!are_isomorphic(&prism, &k33));
        assert!(are_isomorphic(&prism, &prism.relabel(&[5, 3, 4, 0, 2, 1])));
    }
}
