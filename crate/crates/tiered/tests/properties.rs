//! Property tests across the crate: random graphs, random orders, random
//! configurations.

use num::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tiered::duality::{dual_graph, forest_dual, gamma_is_isomorphism};
use tiered::graph::{complete_tiered_graph, SimpleGraph, TieredGraph};
use tiered::inversions::{generalized_inversions, kappa_inversions, LabelledTieredTree};
use tiered::polyomino::LatticePath;
use tiered::sandpile::{
    enumerate_g_parking, is_g_parking, is_recurrent, rs_enumerator, stabilize, Configuration,
    TopplePolicy,
};
use tiered::tutte::{
    activities, count_spanning_trees, spanning_trees, tutte_polynomial, EdgeOrder,
    DEFAULT_TREE_CAP,
};
use tiered::UniPoly;

/// Random connected graph on n vertices from a seeded RNG.
fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> SimpleGraph {
    use rand::Rng;
    loop {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if rng.gen_bool(0.55) {
                    edges.push((i, j));
                }
            }
        }
        let g = SimpleGraph::new(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Random surjective tiering of n vertices into at most `max_tiers` tiers.
fn random_tiering(n: usize, max_tiers: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    use rand::Rng;
    loop {
        let m = rng.gen_range(1..=max_tiers.min(n));
        let tier: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=m)).collect();
        if (1..=m).all(|t| tier.contains(&t)) {
            return tier;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tutte_is_order_independent(seed in 0u64..1000, n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, &mut rng);
        let reference =
            tutte_polynomial(&g, &EdgeOrder::lexicographic(&g), DEFAULT_TREE_CAP).unwrap();
        for _ in 0..4 {
            let order = EdgeOrder::random(&g, &mut rng);
            prop_assert_eq!(
                &tutte_polynomial(&g, &order, DEFAULT_TREE_CAP).unwrap(),
                &reference
            );
        }
    }

    #[test]
    fn tutte_at_one_one_counts_trees(seed in 0u64..1000, n in 2usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, &mut rng);
        let t = tutte_polynomial(&g, &EdgeOrder::lexicographic(&g), DEFAULT_TREE_CAP).unwrap();
        prop_assert_eq!(
            t.evaluate(&BigInt::from(1), &BigInt::from(1)),
            count_spanning_trees(&g)
        );
        prop_assert_eq!(
            BigInt::from(spanning_trees(&g, DEFAULT_TREE_CAP).unwrap().len()),
            count_spanning_trees(&g)
        );
    }

    #[test]
    fn activity_sum_matches_edge_split(seed in 0u64..1000, n in 3usize..6) {
        // every spanning tree: int + ext <= e, and activities are well defined
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, &mut rng);
        let order = EdgeOrder::lexicographic(&g);
        for tree in spanning_trees(&g, DEFAULT_TREE_CAP).unwrap() {
            let (int_act, ext_act) = activities(&g, &tree, &order).unwrap();
            prop_assert!(int_act <= tree.len());
            prop_assert!(ext_act <= g.edge_count() - tree.len());
        }
    }

    #[test]
    fn three_way_enumerator_identity(seed in 0u64..1000, n in 2usize..6) {
        // Σ_T q^κ = T(1,q) = Σ_b q^{rs(b)}, any root
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, &mut rng);
        let t1q = tutte_polynomial(&g, &EdgeOrder::lexicographic(&g), DEFAULT_TREE_CAP)
            .unwrap()
            .at_x1();
        use rand::Rng;
        let root = rng.gen_range(1..=n);
        let mut kappa = UniPoly::zero();
        for tree in spanning_trees(&g, DEFAULT_TREE_CAP).unwrap() {
            kappa.add_term(kappa_inversions(&g, &tree, root).unwrap(), BigInt::from(1));
        }
        prop_assert_eq!(&kappa, &t1q);
        prop_assert_eq!(&rs_enumerator(&g, root).unwrap(), &t1q);
    }

    #[test]
    fn abelian_property(seed in 0u64..1000, n in 2usize..6) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, &mut rng);
        let sink = rng.gen_range(1..=n);
        for _ in 0..10 {
            let grains = g
                .vertices()
                .filter(|&v| v != sink)
                .map(|v| (v, rng.gen_range(0..3 * g.degree(v) as i64)))
                .collect();
            let config = Configuration::new(&g, sink, grains).unwrap();
            let (a, _) = stabilize(&g, &config, TopplePolicy::SmallestFirst).unwrap();
            let (b, _) = stabilize(&g, &config, TopplePolicy::LargestFirst).unwrap();
            prop_assert_eq!(&a, &b);
            // conservation: stabilization only sheds grains through the sink
            prop_assert!(a.total() <= config.total());
        }
    }

    #[test]
    fn parking_recurrent_complement_duality(seed in 0u64..1000, n in 2usize..6) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, &mut rng);
        let sink = rng.gen_range(1..=n);
        let parking = enumerate_g_parking(&g, sink).unwrap();
        prop_assert_eq!(BigInt::from(parking.len()), count_spanning_trees(&g));
        for b in &parking {
            prop_assert!(is_recurrent(&g, &b.complement(&g)).unwrap());
        }
    }

    #[test]
    fn dual_graph_involution_and_isomorphism(seed in 0u64..1000, n in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let tier = random_tiering(n, 3.min(n), &mut rng);
            if tier.iter().max() == Some(&1) {
                continue; // dual needs at least two tiers
            }
            let complete = complete_tiered_graph(&tier).unwrap();
            if !complete.graph().is_connected() {
                continue;
            }
            let d = dual_graph(&complete).unwrap();
            prop_assert!(d.validate().is_empty());
            prop_assert_eq!(&dual_graph(&d).unwrap(), &complete);
            prop_assert!(gamma_is_isomorphism(&complete, &d));
            break;
        }
    }

    #[test]
    fn generalized_inversions_match_kappa(seed in 0u64..1000, n in 2usize..6) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tier = random_tiering(n, 3.min(n), &mut rng);
        let Ok(complete) = complete_tiered_graph(&tier) else { return Ok(()) };
        if !complete.graph().is_connected() {
            return Ok(());
        }
        let root = rng.gen_range(1..=n);
        for tree_edges in spanning_trees(complete.graph(), DEFAULT_TREE_CAP).unwrap() {
            let st = TieredGraph::new(n, complete.tier_count(), complete.tiers().to_vec(),
                tree_edges.iter().copied()).unwrap();
            let ltt = LabelledTieredTree::standard(&st, root).unwrap();
            prop_assert_eq!(
                generalized_inversions(&ltt),
                kappa_inversions(complete.graph(), &tree_edges, root).unwrap()
            );
        }
    }

    #[test]
    fn compatibility_graph_contains_its_tree(seed in 0u64..1000, n in 2usize..7) {
        // random tiered tree: build a random labelled tree, re-tier it
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tier = random_tiering(n, 3.min(n), &mut rng);
        let Ok(complete) = complete_tiered_graph(&tier) else { return Ok(()) };
        if !complete.graph().is_connected() {
            return Ok(());
        }
        for tree_edges in spanning_trees(complete.graph(), DEFAULT_TREE_CAP)
            .unwrap()
            .into_iter()
            .take(8)
        {
            let tree = TieredGraph::new(
                n,
                complete.tier_count(),
                complete.tiers().to_vec(),
                tree_edges.iter().copied(),
            )
            .unwrap();
            let comp = tree.compatibility_graph().unwrap();
            // contains the tree and equals the complete tiered graph
            for e in &tree_edges {
                prop_assert!(comp.graph().has_edge(e.0, e.1));
            }
            prop_assert_eq!(comp.edges(), complete.edges());
        }
    }

    #[test]
    fn lattice_path_parse_render_roundtrip(steps in proptest::collection::vec(prop_oneof!["N", "E"], 1..20)) {
        let text: String = steps.concat();
        let path = LatticePath::parse(&text).unwrap();
        prop_assert_eq!(path.render(), text);
    }

    #[test]
    fn g_parking_subsets_vs_complement(seed in 0u64..1000, n in 2usize..6) {
        // subset test agrees with the complement-recurrence characterisation
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, &mut rng);
        let sink = rng.gen_range(1..=n);
        for _ in 0..10 {
            let grains: std::collections::BTreeMap<usize, i64> = g
                .vertices()
                .filter(|&v| v != sink)
                .map(|v| (v, rng.gen_range(0..g.degree(v) as i64)))
                .collect();
            let config = Configuration::new(&g, sink, grains).unwrap();
            let by_subsets = is_g_parking(&g, &config).unwrap();
            let by_complement = is_recurrent(&g, &config.complement(&g)).unwrap();
            prop_assert_eq!(by_subsets, by_complement);
        }
    }
}

#[test]
fn forest_duality_exhaustive_on_two_sample_graphs() {
    use std::collections::BTreeSet;
    use tiered::tutte::spanning_forests;
    for tier in [vec![1, 1, 2, 2, 3], vec![1, 2, 2, 1, 3]] {
        let g = complete_tiered_graph(&tier).unwrap();
        let d = dual_graph(&g).unwrap();
        let n = g.vertex_count();
        let forests = spanning_forests(g.graph());
        let dual_forests: BTreeSet<_> = spanning_forests(d.graph()).into_iter().collect();
        let mut images = BTreeSet::new();
        for f in &forests {
            let img = forest_dual(n, f);
            assert!(dual_forests.contains(&img));
            assert_eq!(forest_dual(n, &img), *f);
            images.insert(img);
        }
        assert_eq!(images.len(), forests.len());
        assert_eq!(images, dual_forests);
    }
}
