use acgt_core::index::binomial;
use acgt_core::{all_pairs_bfs, all_pairs_floyd_warshall, hosoya_wiener, weighted_wiener, wiener, BigInt, BigRational, Graph};
use num_traits::Zero;
use proptest::prelude::*;

/// Random connected graph: a random tree on `n` vertices plus extra edges
/// chosen by a bitmask over the remaining pairs.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (1usize..=12).prop_flat_map(|n| {
        let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
        let pairs = n * (n - 1) / 2;
        (Just(n), parents, proptest::collection::vec(any::<u8>(), pairs))
    })
    .prop_map(|(n, parents, extra)| {
        let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                // ~20% density on top of the tree.
                if extra[k] < 51 && !edges.contains(&(u, v)) {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, edges).expect("simple graph")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn wiener_agrees_across_methods(g in connected_graph()) {
        let n = g.vertex_count();
        let w = wiener(&g).unwrap();

        let fw = all_pairs_floyd_warshall(&g);
        let mut fw_sum = BigRational::zero();
        for (u, v, d) in fw.pairs() {
            if u < v {
                fw_sum += d.expect("connected");
            }
        }
        prop_assert_eq!(&fw_sum, &BigRational::from_integer(w.clone()));
        prop_assert_eq!(weighted_wiener(&g).unwrap(), fw_sum);

        let h = hosoya_wiener(&g).unwrap();
        prop_assert_eq!(h.derivative_at_one(), w.clone());
        prop_assert_eq!(h.pair_count(), binomial(n as u64, 2));

        let bfs = all_pairs_bfs(&g);
        let direct: u64 = bfs.pairs().filter(|(u, v, _)| u < v).map(|(_, _, d)| u64::from(*d.unwrap())).sum();
        prop_assert_eq!(BigInt::from(direct), w);
    }

    #[test]
    fn relabelling_preserves_the_polynomial(g in connected_graph(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let h = g.relabel(&perm);
        prop_assert_eq!(hosoya_wiener(&g).unwrap(), hosoya_wiener(&h).unwrap());
        prop_assert!(acgt_core::are_isomorphic(&g, &h));
    }

    #[test]
    fn edge_list_round_trip(g in connected_graph()) {
        let back = Graph::from_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
    }
}

#[test]
fn disconnected_graphs_are_rejected() {
    let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert!(wiener(&g).is_err());
    assert!(hosoya_wiener(&g).is_err());
}
