//! Hyperedge effective-resistance estimation over an embedding pool.
//!
//! For a pool vector `χ`, the resistance ratio of hyperedge `e` is
//! `(χ_p − χ_q)² / Q_H(χ)` where `p`, `q` are the extreme pins of `e` along
//! `χ` and `Q_H(χ) = Σ_e w_e · (max_e χ − min_e χ)²`. The estimate `R_e` is
//! the maximum ratio over the pool.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;

use crate::embedding::EmbeddingPool;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;

const PARALLEL_EDGES: usize = 1 << 13;

/// Per-hyperedge resistance estimates with their ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct ResistanceVector<S> {
    r: Vec<S>,
    order: Vec<usize>,
    qh: Vec<S>,
}

impl<S: Scalar> ResistanceVector<S> {
    /// Wraps raw values; `order` is derived (ties by ascending edge id).
    pub fn from_values(r: Vec<S>, qh: Vec<S>) -> Self {
        let order = sorted_order(&r);
        Self { r, order, qh }
    }

    pub fn values(&self) -> &[S] {
        &self.r
    }

    #[inline]
    pub fn get(&self, e: usize) -> S {
        self.r[e]
    }

    /// Hyperedge ids ascending by resistance.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `Q_H` of each pool vector.
    pub fn qh(&self) -> &[S] {
        &self.qh
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// Two-column `edge-id R_e` text.
    pub fn write_tsv<W: Write>(&self, out: &mut W) -> Result<()> {
        for (e, r) in self.r.iter().enumerate() {
            writeln!(out, "{e}\t{r}")?;
        }
        Ok(())
    }
}

fn sorted_order<S: Scalar>(r: &[S]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..r.len()).collect();
    order.sort_by(|&a, &b| r[a].partial_cmp(&r[b]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    order
}

/// Pins of `e` with the largest and smallest `chi` value, ties to the lowest
/// vertex id. Returns `(p, q)`.
#[inline]
pub fn extreme_pins<S: Scalar>(pins: &[usize], chi: &[S]) -> (usize, usize) {
    let mut p = pins[0];
    let mut q = pins[0];
    for &u in &pins[1..] {
        // pins ascend, so strict comparisons keep the lowest id on ties
        if chi[u] > chi[p] {
            p = u;
        }
        if chi[u] < chi[q] {
            q = u;
        }
    }
    (p, q)
}

/// `Q_H(χ) = Σ_e w_e · max_{u,v∈e} (χ_u − χ_v)²`.
pub fn nonlinear_quadratic_form<S: Scalar>(h: &Hypergraph<S>, chi: &[S]) -> Result<S> {
    if chi.len() != h.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: h.num_vertices(),
            found: chi.len(),
        });
    }
    let mut acc = S::zero();
    for (_, pins, w) in h.edges() {
        let (p, q) = extreme_pins(pins, chi);
        let d = chi[p] - chi[q];
        acc += w * d * d;
    }
    Ok(acc)
}

/// Resistance ratio of hyperedge `e` along `chi`; zero when `qh` is zero.
#[inline]
pub fn resistance_ratio<S: Scalar>(h: &Hypergraph<S>, e: usize, chi: &[S], qh: S) -> S {
    if !(qh > S::zero()) {
        return S::zero();
    }
    let (p, q) = extreme_pins(h.edge(e), chi);
    let d = chi[p] - chi[q];
    d * d / qh
}

/// `R_e = max_i r_e(χ^{(i)})` over the pool, with the ascending order.
pub fn estimate_resistances<S: Scalar>(h: &Hypergraph<S>, pool: &EmbeddingPool<S>) -> Result<ResistanceVector<S>> {
    if pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    let qh = pool
        .vectors()
        .iter()
        .map(|chi| nonlinear_quadratic_form(h, chi))
        .collect::<Result<Vec<S>>>()?;
    let edge_max = |e: usize| {
        let mut best = S::zero();
        for (chi, &q) in pool.vectors().iter().zip(&qh) {
            let r = resistance_ratio(h, e, chi, q);
            if r > best {
                best = r;
            }
        }
        best
    };
    let r: Vec<S> = if h.num_edges() >= PARALLEL_EDGES {
        (0..h.num_edges()).into_par_iter().map(edge_max).collect()
    } else {
        (0..h.num_edges()).map(edge_max).collect()
    };
    Ok(ResistanceVector::from_values(r, qh))
}
