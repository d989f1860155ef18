//! Brute-force oracles checked against the pruned searches.

use itertools::Itertools;
use proptest::prelude::*;

use sphere_rigidity::complex::search::{enumerate_locally_injective_maps, search_embedding, search_isomorphism};
use sphere_rigidity::rigidity::automorphism_group;
use sphere_rigidity::whitney::{lift_edge_isomorphism, EdgeBijection, LiftResult, Multigraph};
use sphere_rigidity::{FlagComplex, VertexMap};

fn graph(n: usize, edges: &[(usize, usize)]) -> FlagComplex {
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let pairs: Vec<(String, String)> = edges.iter().map(|&(a, b)| (ids[a].clone(), ids[b].clone())).collect();
    FlagComplex::from_adjacency(ids.clone(), pairs).unwrap()
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = FlagComplex> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> =
                (0..n).tuple_combinations().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            graph(n, &edges)
        })
    })
}

/// Every assignment of `n >= 1` source vertices to `m` targets.
fn all_maps(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    itertools::repeat_n(0..m, n).multi_cartesian_product()
}

fn naive_embeds(src: &FlagComplex, dst: &FlagComplex) -> bool {
    (0..dst.len()).permutations(src.len()).any(|a| src.edges().iter().all(|&(u, v)| dst.adjacent(a[u], a[v])))
}

fn naive_maximal_cliques(c: &FlagComplex) -> Vec<Vec<usize>> {
    let n = c.len();
    let cliques: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| c.is_clique(s))
        .collect();
    let mut maximal: Vec<Vec<usize>> = cliques
        .iter()
        .filter(|s| !(0..n).any(|w| !s.contains(&w) && s.iter().all(|&v| c.adjacent(v, w))))
        .cloned()
        .collect();
    maximal.sort();
    maximal
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedding_matches_naive(src in simple_graph(5), dst in simple_graph(7)) {
        let found = search_embedding(&src, &dst);
        prop_assert_eq!(found.is_some(), naive_embeds(&src, &dst));
        if let Some(m) = found {
            prop_assert!(m.is_injective() && m.is_simplicial(&src, &dst));
        }
    }

    #[test]
    fn maximal_cliques_match_naive(c in simple_graph(12)) {
        let got: Vec<Vec<usize>> = c.maximal_cliques().iter().map(|s| s.vertices().to_vec()).sorted().collect();
        prop_assert_eq!(got, naive_maximal_cliques(&c));
    }

    #[test]
    fn locally_injective_maps_match_naive(src in simple_graph(4), dst in simple_graph(5)) {
        let got = enumerate_locally_injective_maps(&src, &dst, None);
        let naive: Vec<VertexMap> = all_maps(src.len(), dst.len())
            .map(VertexMap::new)
            .filter(|m| m.is_simplicial(&src, &dst) && m.is_locally_injective(&src, &dst))
            .sorted()
            .collect();
        prop_assert_eq!(got, naive);
    }

    #[test]
    fn automorphism_order_matches_naive(c in simple_graph(7)) {
        let naive = (0..c.len())
            .permutations(c.len())
            .filter(|p| VertexMap::new(p.clone()).is_isomorphism(&c, &c))
            .count();
        let g = automorphism_group(&c);
        prop_assert_eq!(g.order, naive as u128);
        prop_assert_eq!(g.elements.map(|e| e.len()), Some(naive));
    }

    #[test]
    fn isomorphism_to_a_relabeling((c, order) in simple_graph(8).prop_flat_map(|c| {
        let n = c.len();
        (Just(c), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })) {
        let edges: Vec<(usize, usize)> = c.edges().iter().map(|&(a, b)| (order[a], order[b])).collect();
        let d = graph(c.len(), &edges);
        let m = search_isomorphism(&c, &d);
        prop_assert!(m.is_some_and(|m| m.is_isomorphism(&c, &d)));
    }
}

/// Vertex bijections inducing `psi`, by brute force.
fn naive_lifts(psi: &EdgeBijection) -> Vec<Vec<usize>> {
    let (g, h) = (psi.source(), psi.target());
    if g.vertex_count() != h.vertex_count() {
        return Vec::new();
    }
    (0..h.vertex_count())
        .permutations(g.vertex_count())
        .filter(|f| {
            (0..g.edge_count()).all(|e| {
                let (a, b) = g.ends(e);
                let mut image = [f[a], f[b]];
                image.sort_unstable();
                let (c, d) = h.ends(psi.image(e));
                image == [c.min(d), c.max(d)]
            })
        })
        .collect()
}

fn multigraph() -> impl Strategy<Value = Multigraph> {
    (2usize..=6).prop_flat_map(|n| {
        let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..=n);
        (tree, extra).prop_map(move |(tree, extra)| {
            let mut pairs: Vec<(usize, usize)> =
                tree.iter().enumerate().map(|(i, ix)| (ix.index(i + 1), i + 1)).collect();
            pairs.extend(extra);
            Multigraph::from_pairs(n, &pairs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Random edge self-bijections of small connected multigraphs: a lift
    /// exists exactly when brute force finds an inducing vertex bijection.
    #[test]
    fn lifts_match_brute_force((g, map) in multigraph().prop_flat_map(|g| {
        let m = g.edge_count();
        (Just(g), Just((0..m).collect::<Vec<_>>()).prop_shuffle())
    })) {
        let psi = EdgeBijection::new(g.clone(), g, map).unwrap();
        let naive = naive_lifts(&psi);
        match lift_edge_isomorphism(&psi) {
            Ok(LiftResult::Lifted { vertex_map }) => {
                prop_assert_eq!(naive.len(), 1);
                prop_assert_eq!(&naive[0], &vertex_map);
            }
            Ok(LiftResult::AmbiguousOrder2) => prop_assert_eq!(naive.len(), 2),
            Ok(LiftResult::Obstructed { .. }) => prop_assert!(naive.is_empty()),
            // not an edge isomorphism: no vertex bijection can induce it
            Err(_) => prop_assert!(naive.is_empty()),
        }
    }
}
