//! Star (bipartite) and clique expansions of a hypergraph, stored as CSR
//! adjacency, and the normalized-adjacency operator `D^{-1/2} A D^{-1/2}`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;

/// Default cap on hyperedge cardinality for clique expansion.
pub const DEFAULT_MAX_CLIQUE_CARDINALITY: usize = 300;

/// Rows below this count are multiplied sequentially.
const PARALLEL_ROWS: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionKind {
    /// Node ids `0..|V|` are vertices, `|V|..|V|+|E|` are hyperedge nodes.
    Star,
    /// Node ids are vertices.
    Clique,
}

/// Weighted simple graph derived from a hypergraph.
#[derive(Clone, Debug)]
pub struct ExpansionGraph<S> {
    kind: ExpansionKind,
    num_vertices: usize,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    weights: Vec<S>,
    degree: Vec<S>,
    /// `w_ij / sqrt(d_i d_j)`, aligned with `neighbors`.
    normalized: Vec<S>,
}

impl<S: Scalar> ExpansionGraph<S> {
    /// Builds from CSR rows. Each row's neighbor order fixes the summation
    /// order used by [`normalized_adjacency_apply`].
    fn from_csr(
        kind: ExpansionKind,
        num_vertices: usize,
        offsets: Vec<usize>,
        neighbors: Vec<usize>,
        weights: Vec<S>,
    ) -> Self {
        let n = offsets.len() - 1;
        let degree: Vec<S> = (0..n)
            .map(|i| {
                let mut d = S::zero();
                for &w in &weights[offsets[i]..offsets[i + 1]] {
                    d += w;
                }
                d
            })
            .collect();
        let inv_sqrt: Vec<S> = degree
            .iter()
            .map(|&d| if d > S::zero() { d.sqrt().recip() } else { S::zero() })
            .collect();
        let mut normalized = Vec::with_capacity(weights.len());
        for i in 0..n {
            for k in offsets[i]..offsets[i + 1] {
                normalized.push(weights[k] * inv_sqrt[i] * inv_sqrt[neighbors[k]]);
            }
        }
        Self {
            kind,
            num_vertices,
            offsets,
            neighbors,
            weights,
            degree,
            normalized,
        }
    }

    pub fn kind(&self) -> ExpansionKind {
        self.kind
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of nodes that correspond to hypergraph vertices.
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of undirected edges.
    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn neighbor_weights(&self, i: usize) -> &[S] {
        &self.weights[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degrees(&self) -> &[S] {
        &self.degree
    }

    /// Weight of edge `(i, j)`, zero if absent.
    pub fn weight(&self, i: usize, j: usize) -> S {
        let row = self.neighbors(i);
        match row.binary_search(&j) {
            Ok(k) => self.weights[self.offsets[i] + k],
            Err(_) => S::zero(),
        }
    }

    /// Laplacian quadratic form `xᵀ(D − A)x = Σ_{(i,j)} w_ij (x_i − x_j)²`.
    pub fn laplacian_quadratic_form(&self, x: &[S]) -> S {
        let mut acc = S::zero();
        for i in 0..self.num_nodes() {
            for k in self.offsets[i]..self.offsets[i + 1] {
                let j = self.neighbors[k];
                if j > i {
                    let d = x[i] - x[j];
                    acc += self.weights[k] * d * d;
                }
            }
        }
        acc
    }
}

/// Star expansion: one edge per pin `(v, e)` with weight `w(e) / |e|`.
pub fn build_star<S: Scalar>(h: &Hypergraph<S>) -> ExpansionGraph<S> {
    let nv = h.num_vertices();
    let n = nv + h.num_edges();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut neighbors = Vec::with_capacity(2 * h.num_pins());
    let mut weights = Vec::with_capacity(2 * h.num_pins());
    let pin_weight = |e: usize| h.edge_weight(e) / S::of_usize(h.cardinality(e));
    offsets.push(0);
    for v in 0..nv {
        // incident edges are ascending, so edge-node ids are too
        for &e in h.incident_edges(v) {
            neighbors.push(nv + e);
            weights.push(pin_weight(e));
        }
        offsets.push(neighbors.len());
    }
    for e in 0..h.num_edges() {
        let w = pin_weight(e);
        for &v in h.edge(e) {
            neighbors.push(v);
            weights.push(w);
        }
        offsets.push(neighbors.len());
    }
    ExpansionGraph::from_csr(ExpansionKind::Star, nv, offsets, neighbors, weights)
}

/// Clique expansion: every pair inside `e` receives `w(e) / C(|e|, 2)`,
/// parallel contributions summed in hyperedge order. Hyperedges larger than
/// `max_clique_cardinality` contribute nothing.
pub fn build_clique<S: Scalar>(h: &Hypergraph<S>, max_clique_cardinality: usize) -> ExpansionGraph<S> {
    let nv = h.num_vertices();
    // (row, col, weight) for both orientations, generated in edge order.
    let mut triples: Vec<(usize, usize, S)> = Vec::new();
    for (_, pins, w) in h.edges() {
        let k = pins.len();
        if k > max_clique_cardinality.max(2) {
            continue;
        }
        let pairs = S::of_usize(k * (k - 1) / 2);
        let c = w / pairs;
        for (a, &u) in pins.iter().enumerate() {
            for &v in &pins[a + 1..] {
                triples.push((u, v, c));
                triples.push((v, u, c));
            }
        }
    }
    // Stable sort keeps hyperedge order inside each (row, col) group, so
    // (u,v) and (v,u) accumulate identically.
    triples.sort_by_key(|&(r, c, _)| (r, c));

    let mut offsets = vec![0usize; nv + 1];
    let mut neighbors = Vec::new();
    let mut weights: Vec<S> = Vec::new();
    let mut i = 0;
    while i < triples.len() {
        let (r, c, _) = triples[i];
        let mut acc = S::zero();
        while i < triples.len() && triples[i].0 == r && triples[i].1 == c {
            acc += triples[i].2;
            i += 1;
        }
        neighbors.push(c);
        weights.push(acc);
        offsets[r + 1] += 1;
    }
    for r in 0..nv {
        offsets[r + 1] += offsets[r];
    }
    ExpansionGraph::from_csr(ExpansionKind::Clique, nv, offsets, neighbors, weights)
}

/// Computes `out = D^{-1/2} A D^{-1/2} x`. Nodes of degree zero map to zero.
///
/// Each row is summed sequentially in CSR order, so results are bit-stable
/// regardless of how rows are distributed over threads.
pub fn normalized_adjacency_apply_into<S: Scalar>(g: &ExpansionGraph<S>, x: &[S], out: &mut [S]) -> Result<()> {
    let n = g.num_nodes();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if out.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: out.len(),
        });
    }
    let row = |i: usize| {
        let mut acc = S::zero();
        for k in g.offsets[i]..g.offsets[i + 1] {
            acc += g.normalized[k] * x[g.neighbors[k]];
        }
        acc
    };
    if n >= PARALLEL_ROWS {
        out.par_iter_mut().enumerate().for_each(|(i, o)| *o = row(i));
    } else {
        for (i, o) in out.iter_mut().enumerate() {
            *o = row(i);
        }
    }
    Ok(())
}

pub fn normalized_adjacency_apply<S: Scalar>(g: &ExpansionGraph<S>, x: &[S]) -> Result<Vec<S>> {
    let mut out = vec![S::zero(); g.num_nodes()];
    normalized_adjacency_apply_into(g, x, &mut out)?;
    Ok(out)
}
