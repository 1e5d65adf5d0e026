//! Resistance-based local clustering of isolated supernodes.
//!
//! After contraction, coarse vertices formed from a single fine vertex are
//! seeds. Each seed looks only at the clusters it shares a hyperedge with
//! and joins the one whose embedding centroid is nearest (squared Euclidean
//! distance over all pool vectors).

use std::sync::Arc;

use crate::coarsen::{contract_hypergraph, LevelState};
use crate::embedding::EmbeddingPool;
use crate::error::{Error, Result};
use crate::hypergraph::{ClusterAssignment, Hypergraph};
use crate::scalar::Scalar;

/// The seed, its neighbor clusters and the sub-hypergraph edges around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalNeighborhood {
    pub seed: usize,
    /// Co-members of the seed's hyperedges, ascending.
    pub neighbor_clusters: Vec<usize>,
    /// Hyperedges fully inside `{seed} ∪ neighbor_clusters`, ascending.
    pub sub_edges: Vec<usize>,
}

impl LocalNeighborhood {
    pub fn is_empty(&self) -> bool {
        self.neighbor_clusters.is_empty()
    }
}

/// Outcome of one merge pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalClusterReport {
    pub seeds_found: usize,
    pub seeds_merged: usize,
    /// Seeds still alone after the pass.
    pub seeds_left_singleton: usize,
    /// Seeds an earlier seed had already merged into.
    pub seeds_absorbed: usize,
    pub empty_neighborhoods: usize,
}

/// Coarse vertices formed from exactly one fine vertex, ascending.
pub fn identify_isolated<S: Scalar>(level: &LevelState<S>) -> Vec<usize> {
    level
        .clusters()
        .cluster_sizes()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 1)
        .map(|(c, _)| c)
        .collect()
}

/// Neighborhood of `seed` in `hc`.
pub fn build_neighborhood<S: Scalar>(hc: &Hypergraph<S>, seed: usize) -> Result<LocalNeighborhood> {
    let n = hc.num_vertices();
    if seed >= n {
        return Err(Error::InvalidVertex { vertex: seed, num_vertices: n });
    }
    let mut neighbors: Vec<usize> = hc
        .incident_edges(seed)
        .iter()
        .flat_map(|&e| hc.edge(e).iter().copied())
        .filter(|&v| v != seed)
        .collect();
    neighbors.sort_unstable();
    neighbors.dedup();

    let inside = |v: usize| v == seed || neighbors.binary_search(&v).is_ok();
    // An edge inside V'_L has >= 2 pins there, so it is incident to one of them.
    let mut candidates: Vec<usize> = std::iter::once(seed)
        .chain(neighbors.iter().copied())
        .flat_map(|v| hc.incident_edges(v).iter().copied())
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    let sub_edges = candidates
        .into_iter()
        .filter(|&e| hc.edge(e).iter().all(|&v| inside(v)))
        .collect();

    Ok(LocalNeighborhood {
        seed,
        neighbor_clusters: neighbors,
        sub_edges,
    })
}

/// Mean embedding coordinates of `members`, one entry per pool vector.
pub fn cluster_centroid<S: Scalar>(pool: &EmbeddingPool<S>, members: &[usize]) -> Vec<S> {
    assert!(!members.is_empty(), "centroid of an empty cluster");
    let k = S::of_usize(members.len());
    pool.vectors()
        .iter()
        .map(|chi| {
            let mut s = S::zero();
            for &v in members {
                s += chi[v];
            }
            s / k
        })
        .collect()
}

fn squared_distance<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (&x, &y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Merges each isolated seed into its nearest neighboring cluster.
///
/// `pool` must be the embedding of `level.fine()`. Seeds are processed in
/// ascending id; merges take effect immediately but centroids are computed
/// once up front. A merged cluster carries `η_target + η_seed + d_min`. The
/// coarse hypergraph is rebuilt once at the end.
pub fn merge_isolated<S: Scalar>(level: LevelState<S>, pool: &EmbeddingPool<S>) -> Result<LevelState<S>> {
    let nf = level.fine.num_vertices();
    if pool.dim() != nf && !pool.is_empty() {
        return Err(Error::DimensionMismatch { expected: nf, found: pool.dim() });
    }
    let seeds = identify_isolated(&level);
    let mut report = LocalClusterReport {
        seeds_found: seeds.len(),
        ..Default::default()
    };
    let nc = level.coarse.num_vertices();
    if seeds.is_empty() || pool.is_empty() {
        report.seeds_left_singleton = seeds.len();
        return Ok(LevelState {
            local_report: Some(report),
            ..level
        });
    }

    let members = level.clusters.members();
    let centroids: Vec<Vec<S>> = members.iter().map(|m| cluster_centroid(pool, m)).collect();
    let mut size: Vec<usize> = members.iter().map(Vec::len).collect();
    let mut eta = level.coarse_eta.clone();
    let mut parent: Vec<usize> = (0..nc).collect();

    for &seed in &seeds {
        if size[find(&mut parent, seed)] > 1 {
            report.seeds_absorbed += 1;
            continue;
        }
        let hood = build_neighborhood(&level.coarse, seed)?;
        if hood.is_empty() {
            report.empty_neighborhoods += 1;
            report.seeds_left_singleton += 1;
            continue;
        }
        let own = &centroids[seed];
        let mut best: Option<(S, usize)> = None;
        for &c in &hood.neighbor_clusters {
            let d = squared_distance(own, &centroids[c]);
            // neighbors ascend, so strict < keeps the lower id on ties
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, c));
            }
        }
        let (d_min, c) = best.expect("non-empty neighborhood");
        let target = find(&mut parent, c);
        parent[seed] = target;
        size[target] += size[seed];
        eta[target] = eta[target] + eta[seed] + d_min;
        report.seeds_merged += 1;
    }

    let roots: Vec<usize> = (0..nc).map(|c| find(&mut parent, c)).collect();
    let regroup = ClusterAssignment::from_labels(&roots);
    let mut coarse_eta = vec![S::zero(); regroup.num_clusters()];
    for c in 0..nc {
        coarse_eta[regroup.cluster(c)] = eta[roots[c]];
    }
    let clusters = level.clusters.compose(&regroup)?;
    let coarse = contract_hypergraph(&level.fine, &clusters);

    Ok(LevelState {
        coarse: Arc::new(coarse),
        clusters,
        coarse_eta,
        local_report: Some(report),
        ..level
    })
}
