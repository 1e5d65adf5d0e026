mod common;

use std::sync::Arc;

use common::*;
use hypercoarsen::coarsen::{contract_level, CoarseningHierarchy};
use hypercoarsen::embedding::build_embedding_pool;
use hypercoarsen::generate::{barbell, random_uniform};
use hypercoarsen::hypergraph::to_hgr_string;
use hypercoarsen::localcluster::{build_neighborhood, identify_isolated};
use hypercoarsen::{
    accumulate_resistance, coarsen_multilevel, estimate_resistances, merge_isolated, CoarsenConfig, ContractionPolicy,
    Hypergraph64,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(seed: u64, levels: usize, q: f64, local: bool) -> CoarsenConfig {
    CoarsenConfig {
        levels,
        seed,
        policy: ContractionPolicy::Quantile(q),
        local_clustering: local,
        ..Default::default()
    }
}

fn artifacts(hier: &CoarseningHierarchy<f64>) -> (Vec<usize>, String, Vec<u8>) {
    let mut levels = Vec::new();
    hier.write_levels_tsv(&mut levels).unwrap();
    (hier.composed_clusters().cluster_of().to_vec(), to_hgr_string(hier.coarsest(), true), levels)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cut_preserved_through_hierarchy(
        seed in 0u64..10_000,
        n in 6usize..60,
        levels in 1usize..4,
        q in 0.2f64..0.9,
        local: bool,
        side_seed: u64,
    ) {
        let h = random_weighted_hypergraph(n, 2 * n, 4, seed);
        let hier = coarsen_multilevel(&h, &config(seed, levels, q, local)).unwrap();
        let coarse = hier.coarsest();
        let mut rng = ChaCha8Rng::seed_from_u64(side_seed);
        let coarse_side: Vec<bool> = (0..coarse.num_vertices()).map(|_| rng.gen()).collect();
        let fine_side: Vec<bool> = hier.composed_clusters().cluster_of().iter().map(|&c| coarse_side[c]).collect();
        prop_assert_eq!(cut_of(coarse, &coarse_side), cut_of(&h, &fine_side));
    }

    #[test]
    fn volume_shrinkage_and_eta(seed in 0u64..10_000, n in 6usize..60, q in 0.2f64..0.9, local: bool) {
        let h = random_weighted_hypergraph(n, 2 * n, 4, seed);
        let hier = coarsen_multilevel(&h, &config(seed, 3, q, local)).unwrap();
        let mut prev = h.num_vertices();
        for st in hier.levels() {
            prop_assert!(pin_volume(st.coarse()) <= pin_volume(st.fine()));
            prop_assert!(st.coarse().num_vertices() < prev);
            prev = st.coarse().num_vertices();
            prop_assert!(!st.contracted_edges().is_empty());
            prop_assert!(st.coarse_eta().iter().all(|&x| x >= 0.0));
            for v in 0..st.fine().num_vertices() {
                prop_assert!(st.coarse_eta()[st.clusters().cluster(v)] >= st.eta()[v]);
            }
            prop_assert!(st.contracted_edges().iter().all(|&e| st.resistances().get(e) < st.delta()));
        }
        let total_w: f64 = h.vertex_weights().iter().sum();
        prop_assert_eq!(hier.coarsest().vertex_weights().iter().sum::<f64>(), total_w);
    }

    #[test]
    fn accumulation_never_lowers_resistance(seed in 0u64..10_000, n in 4usize..40) {
        let h = random_weighted_hypergraph(n, 2 * n, 4, seed);
        let pool = build_embedding_pool(&h, 3, seed, &Default::default());
        prop_assume!(!pool.is_empty());
        let raw = estimate_resistances(&h, &pool).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0)).collect();
        let acc = accumulate_resistance(&h, &raw, &eta).unwrap();
        for e in 0..h.num_edges() {
            prop_assert!(acc.get(e) >= raw.get(e));
        }
    }

    #[test]
    fn local_merges_stay_local(seed in 0u64..10_000, n in 6usize..60, q in 0.1f64..0.7) {
        let h = Arc::new(random_weighted_hypergraph(n, 2 * n, 4, seed));
        let pool = build_embedding_pool(&h, 3, seed, &Default::default());
        prop_assume!(!pool.is_empty());
        let r = estimate_resistances(&h, &pool).unwrap();
        let before = contract_level(Arc::clone(&h), r, vec![0.0; n], ContractionPolicy::Quantile(q)).unwrap();
        let seeds = identify_isolated(&before);
        let hoods: Vec<_> = seeds.iter().map(|&s| build_neighborhood(before.coarse(), s).unwrap()).collect();
        let old_members = before.clusters().members();
        let old_clusters = before.clusters().clone();
        let after = merge_isolated(before, &pool).unwrap();

        let singletons = |sizes: Vec<usize>| sizes.iter().filter(|&&s| s == 1).count();
        prop_assert!(after.clusters().num_clusters() <= old_clusters.num_clusters());
        prop_assert!(singletons(after.clusters().cluster_sizes()) <= singletons(old_clusters.cluster_sizes()));
        let report = after.local_report().unwrap();
        prop_assert_eq!(report.seeds_found, seeds.len());
        if hoods.iter().any(|n| !n.is_empty()) {
            prop_assert!(singletons(after.clusters().cluster_sizes()) < singletons(old_clusters.cluster_sizes()));
        }
        for (hood, &s) in hoods.iter().zip(&seeds) {
            let v = old_members[s][0];
            let home = after.clusters().cluster(v);
            if hood.is_empty() {
                prop_assert_eq!(after.clusters().cluster_sizes()[home], 1);
            } else {
                let joined_neighbor = hood
                    .neighbor_clusters
                    .iter()
                    .any(|&c| after.clusters().cluster(old_members[c][0]) == home);
                prop_assert!(joined_neighbor);
            }
        }
    }
}

#[test]
fn fixed_seed_is_bit_identical() {
    let h = random_uniform::<f64>(2000, 2500, 2, 6, 9);
    let cfg = CoarsenConfig::default();
    let a = coarsen_multilevel(&h, &cfg).unwrap();
    let b = coarsen_multilevel(&h, &cfg).unwrap();
    assert_eq!(artifacts(&a), artifacts(&b));
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let c = one.install(|| coarsen_multilevel(&h, &cfg).unwrap());
    assert_eq!(artifacts(&a), artifacts(&c));
}

#[test]
fn identity_when_threshold_below_all() {
    let h = random_weighted_hypergraph(20, 30, 4, 3);
    let cfg = CoarsenConfig {
        levels: 1,
        policy: ContractionPolicy::Absolute(-1.0),
        ..Default::default()
    };
    let hier = coarsen_multilevel(&h, &cfg).unwrap();
    assert!(hier.levels().is_empty());
    assert_eq!(hier.coarsest(), &h);
    assert_eq!(hier.nr(), 0.0);
}

#[test]
fn pendant_joins_its_own_clique() {
    let mut hits = 0;
    for seed in 0..10 {
        let (h, _) = barbell::<f64>(4, true);
        let hier = coarsen_multilevel(&h, &config(seed, 1, 0.5, true)).unwrap();
        let a = hier.composed_clusters();
        let home = a.cluster(8);
        let with_first = (0..4).any(|v| a.cluster(v) == home);
        let with_second = (4..8).any(|v| a.cluster(v) == home);
        if with_first && !with_second {
            hits += 1;
        }
    }
    assert!(hits >= 9, "pendant joined clique 1 in {hits}/10 seeds");
}

#[test]
fn synthetic_node_reduction_recorded() {
    let h: Hypergraph64 = random_uniform(10_000, 10_000, 2, 6, 11);
    let hier = coarsen_multilevel(&h, &config(42, 4, 0.5, true)).unwrap();
    let nrs: Vec<f64> = hier.summaries().iter().map(|s| s.nr).collect();
    println!("10k synthetic: NR per level {nrs:?}");
    assert!(nrs.windows(2).all(|w| w[0] <= w[1]));
    assert!(hier.nr() > 0.0 && hier.nr() < 1.0);
}
