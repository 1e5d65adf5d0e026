//! Seeded synthetic hypergraphs for tests, benchmarks and examples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;

/// Two `k`-cliques of 2-pin edges joined by a single bridge edge between
/// vertex `k − 1` and vertex `k`. With `pendant`, vertex `2k` hangs off
/// vertex 0. Returns the hypergraph and the bridge's edge id.
pub fn barbell<S: Scalar>(k: usize, pendant: bool) -> (Hypergraph<S>, usize) {
    assert!(k >= 2, "barbell cliques need at least two vertices");
    let mut edges = Vec::new();
    for base in [0, k] {
        for a in base..base + k {
            for b in a + 1..base + k {
                edges.push(vec![a, b]);
            }
        }
    }
    let bridge = edges.len();
    edges.push(vec![k - 1, k]);
    let n = if pendant {
        edges.push(vec![0, 2 * k]);
        2 * k + 1
    } else {
        2 * k
    };
    (Hypergraph::from_edges(n, edges).expect("barbell pins are in range"), bridge)
}

/// Uniform random hypergraph: `m` hyperedges whose cardinality is uniform in
/// `min_card..=max_card` and whose pins are distinct uniform vertices. Weights
/// are 1.
pub fn random_uniform<S: Scalar>(n: usize, m: usize, min_card: usize, max_card: usize, seed: u64) -> Hypergraph<S> {
    assert!(2 <= min_card && min_card <= max_card && max_card <= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let k = rng.gen_range(min_card..=max_card);
        edges.push(rand::seq::index::sample(&mut rng, n, k).into_vec());
    }
    Hypergraph::from_edges(n, edges).expect("random pins are in range")
}

/// Planted-partition hypergraph.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedConfig {
    pub num_vertices: usize,
    pub num_clusters: usize,
    pub num_edges: usize,
    /// Probability that a hyperedge stays inside one cluster.
    pub intra_probability: f64,
    pub min_card: usize,
    pub max_card: usize,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self {
            num_vertices: 400,
            num_clusters: 8,
            num_edges: 1600,
            intra_probability: 0.9,
            min_card: 2,
            max_card: 4,
        }
    }
}

/// Vertices are dealt round-robin into clusters (`v % k`). Each hyperedge is
/// drawn inside a random cluster with probability `intra_probability`, and
/// over all vertices otherwise. Returns the hypergraph and planted labels.
pub fn planted_partition<S: Scalar>(cfg: &PlantedConfig, seed: u64) -> (Hypergraph<S>, Vec<usize>) {
    let k = cfg.num_clusters;
    let n = cfg.num_vertices;
    assert!(k >= 1 && n >= k && cfg.min_card >= 2 && cfg.min_card <= cfg.max_card && cfg.max_card <= n / k);
    let labels: Vec<usize> = (0..n).map(|v| v % k).collect();
    let members: Vec<Vec<usize>> = (0..k).map(|c| (c..n).step_by(k).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(cfg.num_edges);
    for _ in 0..cfg.num_edges {
        let card = rng.gen_range(cfg.min_card..=cfg.max_card);
        let pins = if rng.gen_bool(cfg.intra_probability) {
            let c = &members[rng.gen_range(0..k)];
            c.choose_multiple(&mut rng, card).copied().collect()
        } else {
            rand::seq::index::sample(&mut rng, n, card).into_vec()
        };
        edges.push(pins);
    }
    (Hypergraph::from_edges(n, edges).expect("planted pins are in range"), labels)
}
