//! Hypergraph data model and cluster assignments.
//!
//! A [`Hypergraph`] stores its hyperedges in a compressed layout
//! (`edge_offsets` / `pins`) together with the transposed vertex → edge
//! incidence. Pins inside a hyperedge are kept sorted ascending and free of
//! duplicates; hyperedges that end up with fewer than two pins are dropped
//! at construction time and counted.

mod io;

pub use io::{parse_hgr, parse_hgr_str, read_clusters, read_clusters_str, to_hgr_string, write_clusters, write_hgr};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Weighted hypergraph `H = (V, E, w)` with vertex weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypergraph<S> {
    num_vertices: usize,
    edge_offsets: Vec<usize>,
    pins: Vec<usize>,
    edge_weights: Vec<S>,
    vertex_weights: Vec<S>,
    vertex_offsets: Vec<usize>,
    incidence: Vec<usize>,
    dropped_edges: usize,
}

impl<S: Scalar> Hypergraph<S> {
    /// Builds a hypergraph with unit edge and vertex weights.
    pub fn from_edges<I, P>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[usize]>,
    {
        let mut b = HypergraphBuilder::new(num_vertices);
        for e in edges {
            b.add_edge(e.as_ref().iter().copied(), S::one());
        }
        b.build()
    }

    /// Builds a hypergraph from `(pins, weight)` pairs with unit vertex weights.
    pub fn from_weighted_edges<I, P>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, S)>,
        P: AsRef<[usize]>,
    {
        let mut b = HypergraphBuilder::new(num_vertices);
        for (e, w) in edges {
            b.add_edge(e.as_ref().iter().copied(), w);
        }
        b.build()
    }

    /// Assembles a hypergraph from already-sanitized parts: every pin list
    /// sorted, deduplicated, in range and of cardinality >= 2.
    pub(crate) fn from_sanitized(
        num_vertices: usize,
        edge_offsets: Vec<usize>,
        pins: Vec<usize>,
        edge_weights: Vec<S>,
        vertex_weights: Vec<S>,
        dropped_edges: usize,
    ) -> Self {
        debug_assert_eq!(edge_offsets.len(), edge_weights.len() + 1);
        debug_assert_eq!(vertex_weights.len(), num_vertices);

        let mut counts = vec![0usize; num_vertices + 1];
        for &p in &pins {
            counts[p + 1] += 1;
        }
        for i in 0..num_vertices {
            counts[i + 1] += counts[i];
        }
        let vertex_offsets = counts;
        let mut cursor = vertex_offsets.clone();
        let mut incidence = vec![0usize; pins.len()];
        for e in 0..edge_weights.len() {
            for &p in &pins[edge_offsets[e]..edge_offsets[e + 1]] {
                incidence[cursor[p]] = e;
                cursor[p] += 1;
            }
        }

        Self {
            num_vertices,
            edge_offsets,
            pins,
            edge_weights,
            vertex_weights,
            vertex_offsets,
            incidence,
            dropped_edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edge_weights.len()
    }

    /// Total number of pins, `Σ_e |e|`.
    pub fn num_pins(&self) -> usize {
        self.pins.len()
    }

    /// Number of hyperedges discarded at construction because they had
    /// fewer than two distinct pins.
    pub fn dropped_edges(&self) -> usize {
        self.dropped_edges
    }

    /// Sorted pins of hyperedge `e`.
    #[inline]
    pub fn edge(&self, e: usize) -> &[usize] {
        &self.pins[self.edge_offsets[e]..self.edge_offsets[e + 1]]
    }

    #[inline]
    pub fn cardinality(&self, e: usize) -> usize {
        self.edge_offsets[e + 1] - self.edge_offsets[e]
    }

    #[inline]
    pub fn edge_weight(&self, e: usize) -> S {
        self.edge_weights[e]
    }

    pub fn edge_weights(&self) -> &[S] {
        &self.edge_weights
    }

    #[inline]
    pub fn vertex_weight(&self, v: usize) -> S {
        self.vertex_weights[v]
    }

    pub fn vertex_weights(&self) -> &[S] {
        &self.vertex_weights
    }

    pub fn total_vertex_weight(&self) -> S {
        self.vertex_weights.iter().copied().sum()
    }

    /// Hyperedges incident to `v`, ascending.
    #[inline]
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[self.vertex_offsets[v]..self.vertex_offsets[v + 1]]
    }

    /// Iterates `(edge id, pins, weight)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &[usize], S)> + '_ {
        (0..self.num_edges()).map(move |e| (e, self.edge(e), self.edge_weights[e]))
    }

    /// Weighted vertex degrees `d_v = Σ_{e ∋ v} w(e)`.
    pub fn vertex_degrees(&self) -> Vec<S> {
        (0..self.num_vertices)
            .map(|v| {
                self.incident_edges(v)
                    .iter()
                    .map(|&e| self.edge_weights[e])
                    .fold(S::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn max_cardinality(&self) -> usize {
        (0..self.num_edges()).map(|e| self.cardinality(e)).max().unwrap_or(0)
    }
}

/// Incremental, validating constructor for [`Hypergraph`].
#[derive(Clone, Debug)]
pub struct HypergraphBuilder<S> {
    num_vertices: usize,
    edges: Vec<(Vec<usize>, S)>,
    vertex_weights: Option<Vec<S>>,
}

impl<S: Scalar> HypergraphBuilder<S> {
    pub fn new(num_vertices: usize) -> Self {
        Self {
            num_vertices,
            edges: Vec::new(),
            vertex_weights: None,
        }
    }

    pub fn add_edge<I: IntoIterator<Item = usize>>(&mut self, pins: I, weight: S) -> &mut Self {
        self.edges.push((pins.into_iter().collect(), weight));
        self
    }

    pub fn vertex_weights(&mut self, weights: Vec<S>) -> &mut Self {
        self.vertex_weights = Some(weights);
        self
    }

    /// Validates and assembles the hypergraph. Duplicate pins are merged and
    /// hyperedges left with fewer than two pins are dropped.
    pub fn build(self) -> Result<Hypergraph<S>> {
        let n = self.num_vertices;
        let vertex_weights = match self.vertex_weights {
            Some(w) => {
                if w.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: w.len(),
                    });
                }
                if let Some((v, &bad)) = w
                    .iter()
                    .enumerate()
                    .find(|(_, &x)| !(x >= S::zero()) || !x.is_finite())
                {
                    return Err(Error::InvalidVertexWeight {
                        vertex: v,
                        weight: bad.as_f64(),
                    });
                }
                w
            }
            None => vec![S::one(); n],
        };

        let mut edge_offsets = Vec::with_capacity(self.edges.len() + 1);
        edge_offsets.push(0);
        let mut pins = Vec::new();
        let mut weights = Vec::with_capacity(self.edges.len());
        let mut dropped = 0;
        for (e, (mut members, w)) in self.edges.into_iter().enumerate() {
            if !(w > S::zero()) || !w.is_finite() {
                return Err(Error::InvalidEdgeWeight {
                    edge: e,
                    weight: w.as_f64(),
                });
            }
            if let Some(&bad) = members.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidVertex {
                    vertex: bad,
                    num_vertices: n,
                });
            }
            members.sort_unstable();
            members.dedup();
            if members.len() < 2 {
                dropped += 1;
                continue;
            }
            pins.extend_from_slice(&members);
            edge_offsets.push(pins.len());
            weights.push(w);
        }

        Ok(Hypergraph::from_sanitized(n, edge_offsets, pins, weights, vertex_weights, dropped))
    }
}

/// Mapping of every fine vertex to a dense cluster id in `[0, num_clusters)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterAssignment {
    cluster_of: Vec<usize>,
    num_clusters: usize,
}

impl ClusterAssignment {
    /// Validates that the ids form the contiguous range `[0, k)`.
    pub fn new(cluster_of: Vec<usize>) -> Result<Self> {
        let num_clusters = cluster_of.iter().max().map_or(0, |&m| m + 1);
        let mut seen = vec![false; num_clusters];
        for &c in &cluster_of {
            seen[c] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidAssignment(format!(
                "cluster ids are not contiguous: id {missing} unused below {num_clusters}"
            )));
        }
        Ok(Self {
            cluster_of,
            num_clusters,
        })
    }

    /// Relabels arbitrary labels densely, numbering clusters in order of
    /// their smallest member.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let cluster_of = labels
            .iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        Self {
            cluster_of,
            num_clusters: remap.len(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cluster_of: (0..n).collect(),
            num_clusters: n,
        }
    }

    pub fn cluster_of(&self) -> &[usize] {
        &self.cluster_of
    }

    #[inline]
    pub fn cluster(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    pub fn num_clusters(&self) -> usize {
        self.num_clusters
    }

    pub fn num_vertices(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_clusters];
        for &c in &self.cluster_of {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of each cluster, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters];
        for (v, &c) in self.cluster_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// `self` maps fine → mid, `next` maps mid → coarse; the result maps
    /// fine → coarse.
    pub fn compose(&self, next: &ClusterAssignment) -> Result<ClusterAssignment> {
        if next.num_vertices() != self.num_clusters {
            return Err(Error::DimensionMismatch {
                expected: self.num_clusters,
                found: next.num_vertices(),
            });
        }
        Ok(ClusterAssignment {
            cluster_of: self.cluster_of.iter().map(|&c| next.cluster_of[c]).collect(),
            num_clusters: next.num_clusters,
        })
    }
}
