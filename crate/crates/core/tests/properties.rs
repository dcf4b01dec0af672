use proptest::prelude::*;

use tokenham::graph::{components_excluding, connected_components};
use tokenham::token::{binomial, token_neighbors};
use tokenham::{
    complement_vertex, join, rank, token_adjacent, unrank, Graph, GraphFamily, TokenGraph,
    TokenVertex,
};

fn arb_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let count = pairs.len();
        proptest::collection::vec(any::<bool>(), count).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
            Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
        })
    })
}

fn arb_subset(n: usize, k: usize) -> impl Strategy<Value = TokenVertex> {
    proptest::sample::subsequence((0..n).collect::<Vec<_>>(), k)
        .prop_map(TokenVertex::from_unsorted)
}

proptest! {
    #[test]
    fn join_sizes(g in arb_graph(6), h in arb_graph(6)) {
        let j = join(&g, &h);
        prop_assert!(j.validate());
        prop_assert_eq!(j.order(), g.order() + h.order());
        prop_assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + g.order() * h.order());
        for (u, v) in h.edges() {
            prop_assert!(j.has_edge(u + g.order(), v + g.order()));
        }
    }

    #[test]
    fn rank_unrank_bijective(n in 1usize..=20, k in 1usize..=5, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let total = binomial(n, k).unwrap();
        let r = seed % total;
        let v = unrank(r, n, k).unwrap();
        prop_assert_eq!(v.k(), k);
        prop_assert_eq!(rank(&v, n).unwrap(), r);
    }

    #[test]
    fn complement_is_involution((n, v) in (2usize..12).prop_flat_map(|n| (Just(n), (1..n).prop_flat_map(move |k| arb_subset(n, k))))) {
        let c = complement_vertex(&v, n);
        prop_assert_eq!(c.k(), n - v.k());
        prop_assert_eq!(complement_vertex(&c, n), v);
    }

    #[test]
    fn token_degree_counts_boundary_edges(g in arb_graph(7), k_seed in any::<usize>()) {
        let n = g.order();
        prop_assume!(n >= 2);
        let k = 1 + k_seed % (n - 1);
        let tg = TokenGraph::new(&g, k).unwrap();
        prop_assert_eq!(tg.vertex_count() as u64, binomial(n, k).unwrap());
        prop_assert!(tg.graph().validate());
        for r in 0..tg.vertex_count() {
            let a = tg.vertex(r);
            let boundary = g.edges().filter(|&(u, v)| a.contains(u) != a.contains(v)).count();
            prop_assert_eq!(tg.graph().degree(r), boundary);
        }
    }

    #[test]
    fn complement_preserves_adjacency(g in arb_graph(6), seed in any::<(u64, u64)>()) {
        let n = g.order();
        prop_assume!(n >= 3);
        let k = 1 + (seed.0 as usize) % (n - 1);
        let total = binomial(n, k).unwrap();
        let a = unrank(seed.0 % total, n, k).unwrap();
        let b = unrank(seed.1 % total, n, k).unwrap();
        prop_assert_eq!(
            token_adjacent(&g, &a, &b).unwrap(),
            token_adjacent(&g, &complement_vertex(&a, n), &complement_vertex(&b, n)).unwrap()
        );
    }

    #[test]
    fn streamed_neighbors_match_materialized(g in arb_graph(7)) {
        let n = g.order();
        prop_assume!(n >= 3);
        let tg = TokenGraph::new(&g, 2).unwrap();
        for r in 0..tg.vertex_count() {
            let v = tg.vertex(r);
            let mut streamed: Vec<usize> = token_neighbors(&g, &v).map(|u| tg.index_of(&u).unwrap()).collect();
            streamed.sort_unstable();
            prop_assert_eq!(streamed.as_slice(), tg.graph().neighbors(r));
        }
    }

    #[test]
    fn components_label_consistently(g in arb_graph(9)) {
        let comps = connected_components(&g);
        for (u, v) in g.edges() {
            prop_assert_eq!(comps.labels[u], comps.labels[v]);
        }
        let distinct: std::collections::BTreeSet<_> = comps.labels.iter().collect();
        prop_assert_eq!(distinct.len(), comps.count);
        let none_removed = components_excluding(&g, &vec![false; g.order()]);
        prop_assert_eq!(none_removed, comps);
    }
}

#[test]
fn built_families_are_simple() {
    use GraphFamily::*;
    for f in [
        Path(1),
        Path(7),
        Empty(3),
        Complete(6),
        Cycle(5),
        CompleteBipartite(2, 3),
        Star(4),
        SquareOfPath(7),
        Fan(3, 4),
        Fan(2, 1),
    ] {
        assert!(Graph::build(f).unwrap().validate(), "{f:?}");
    }
}

#[test]
fn complement_map_is_isomorphism_on_small_instances() {
    for f in [
        GraphFamily::Fan(2, 4),
        GraphFamily::Cycle(7),
        GraphFamily::SquareOfPath(8),
    ] {
        let g = Graph::build(f).unwrap();
        for k in 1..g.order() {
            if binomial(g.order(), k).unwrap() <= 1000 {
                assert!(
                    tokenham::check_complement_iso(&g, k).unwrap(),
                    "{f:?} k={k}"
                );
            }
        }
    }
}
