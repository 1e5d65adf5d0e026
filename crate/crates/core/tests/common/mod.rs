//! Shared fixtures and independent oracles for integration tests.
#![allow(dead_code)]

use hypercoarsen::Hypergraph64;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Connected random graph: random spanning tree plus `extra` random edges,
/// weights uniform in [0.5, 2].
pub fn random_graph(n: usize, extra: usize, seed: u64) -> Hypergraph64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((vec![u, v], rng.gen_range(0.5..2.0)));
    }
    let mut added = 0;
    while added < extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((vec![u, v], rng.gen_range(0.5..2.0)));
            added += 1;
        }
    }
    Hypergraph64::from_weighted_edges(n, edges).unwrap()
}

/// Dense Laplacian of a cardinality-2 hypergraph.
pub fn dense_laplacian(h: &Hypergraph64) -> DMatrix<f64> {
    let n = h.num_vertices();
    let mut l = DMatrix::zeros(n, n);
    for (_, p, w) in h.edges() {
        assert_eq!(p.len(), 2);
        let (a, b) = (p[0], p[1]);
        l[(a, a)] += w;
        l[(b, b)] += w;
        l[(a, b)] -= w;
        l[(b, a)] -= w;
    }
    l
}

/// Exact effective resistance `b_pqᵀ L† b_pq` of every edge, via the
/// Moore–Penrose pseudoinverse computed by SVD.
pub fn exact_edge_resistances(h: &Hypergraph64) -> Vec<f64> {
    let l = dense_laplacian(h);
    let pinv = l.pseudo_inverse(1e-10).unwrap();
    h.edges()
        .map(|(_, p, _)| {
            let (a, b) = (p[0], p[1]);
            pinv[(a, a)] + pinv[(b, b)] - 2.0 * pinv[(a, b)]
        })
        .collect()
}

fn ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap());
    let mut r = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0;
        for k in i..=j {
            r[idx[k]] = avg;
        }
        i = j + 1;
    }
    r
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut da = 0.0;
    let mut db = 0.0;
    for i in 0..a.len() {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma).powi(2);
        db += (rb[i] - mb).powi(2);
    }
    num / (da * db).sqrt()
}

/// Random hypergraph with cardinalities in `2..=max_card` and dyadic weights
/// from {0.5, 1, 1.5, 2}, so weight sums are exact in any order.
pub fn random_weighted_hypergraph(n: usize, m: usize, max_card: usize, seed: u64) -> Hypergraph64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let k = rng.gen_range(2..=max_card.min(n));
        let pins = rand::seq::index::sample(&mut rng, n, k).into_vec();
        edges.push((pins, rng.gen_range(1..=4) as f64 * 0.5));
    }
    Hypergraph64::from_weighted_edges(n, edges).unwrap()
}

/// Conductance of the vertex set encoded by `bits`, computed from the pin
/// lists directly. `None` when the smaller side has zero volume.
pub fn brute_conductance(h: &Hypergraph64, bits: u32) -> Option<f64> {
    let inside = |v: usize| bits >> v & 1 == 1;
    let mut degree = vec![0.0; h.num_vertices()];
    let mut cut = 0.0;
    for (_, pins, w) in h.edges() {
        for &v in pins {
            degree[v] += w;
        }
        let split = pins.iter().any(|&a| pins.iter().any(|&b| inside(a) != inside(b)));
        if split {
            cut += w;
        }
    }
    let vol_in: f64 = (0..h.num_vertices()).filter(|&v| inside(v)).map(|v| degree[v]).sum();
    let vol_out: f64 = (0..h.num_vertices()).filter(|&v| !inside(v)).map(|v| degree[v]).sum();
    let min = vol_in.min(vol_out);
    (min > 0.0).then(|| cut / min)
}

/// `Φ_H` by enumerating every proper non-empty subset.
pub fn brute_min_conductance(h: &Hypergraph64) -> Option<f64> {
    let n = h.num_vertices();
    (1u32..(1 << n) - 1).filter_map(|b| brute_conductance(h, b)).reduce(f64::min)
}

pub fn bits_to_set(bits: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| bits >> v & 1 == 1).collect()
}

/// Weighted cut of a bipartition given as a per-vertex side flag.
pub fn cut_of(h: &Hypergraph64, side: &[bool]) -> f64 {
    h.edges()
        .filter(|(_, p, _)| p.iter().any(|&v| side[v] != side[p[0]]))
        .map(|(_, _, w)| w)
        .sum()
}

/// `Σ_e w(e)·|e|`.
pub fn pin_volume(h: &Hypergraph64) -> f64 {
    h.edges().map(|(_, p, w)| w * p.len() as f64).sum()
}
