//! Cut, conductance and clustering quality metrics, plus the
//! resistance-based rating export for external partitioners.

use std::io::Write;

use crate::coarsen::node_reduction;
use crate::error::{Error, Result};
use crate::hypergraph::{ClusterAssignment, Hypergraph};
use crate::resistance::ResistanceVector;
use crate::scalar::Scalar;

/// Substitute denominator for rating terms with `R_e = 1`.
pub const RATING_GUARD: f64 = 1e-6;
/// `|R_e − 1|` at or below this triggers the guard.
pub const RATING_GUARD_BAND: f64 = 1e-12;

fn membership_mask(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, num_vertices: n });
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// `(cut(S, Ŝ), vol(S), vol(Ŝ))` for a membership mask.
pub fn cut_and_volume_mask<S: Scalar>(h: &Hypergraph<S>, in_set: &[bool]) -> Result<(S, S, S)> {
    if in_set.len() != h.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: h.num_vertices(),
            found: in_set.len(),
        });
    }
    let mut cut = S::zero();
    let mut vol_s = S::zero();
    let mut vol_all = S::zero();
    for (_, pins, w) in h.edges() {
        let inside = pins.iter().filter(|&&v| in_set[v]).count();
        if inside > 0 && inside < pins.len() {
            cut += w;
        }
        vol_s += w * S::of_usize(inside);
        vol_all += w * S::of_usize(pins.len());
    }
    Ok((cut, vol_s, vol_all - vol_s))
}

/// `(cut(S, Ŝ), vol(S), vol(Ŝ))` with split hyperedges counted once by weight.
pub fn cut_and_volume<S: Scalar>(h: &Hypergraph<S>, set: &[usize]) -> Result<(S, S, S)> {
    let mask = membership_mask(h.num_vertices(), set)?;
    cut_and_volume_mask(h, &mask)
}

/// `Φ(S) = cut(S, Ŝ) / min(vol(S), vol(Ŝ))`.
pub fn conductance_mask<S: Scalar>(h: &Hypergraph<S>, in_set: &[bool]) -> Result<S> {
    let size = in_set.iter().filter(|&&b| b).count();
    if size == 0 {
        return Err(Error::InvalidVertexSet("S is empty".into()));
    }
    if size == in_set.len() {
        return Err(Error::InvalidVertexSet("S is the whole vertex set".into()));
    }
    let (cut, vs, vc) = cut_and_volume_mask(h, in_set)?;
    let min = vs.min(vc);
    if !(min > S::zero()) {
        return Err(Error::InvalidVertexSet("smaller side has zero volume".into()));
    }
    Ok(cut / min)
}

pub fn conductance<S: Scalar>(h: &Hypergraph<S>, set: &[usize]) -> Result<S> {
    let mask = membership_mask(h.num_vertices(), set)?;
    conductance_mask(h, &mask)
}

/// Largest vertex count accepted by [`min_conductance`].
pub const MAX_EXHAUSTIVE_VERTICES: usize = 24;

/// `Φ_H = min_{∅⊊S⊊V} Φ(S)` by enumeration, skipping sets whose smaller side
/// has zero volume. Returns the minimum and one minimizing set (the one not
/// containing the last vertex, first in enumeration order).
pub fn min_conductance<S: Scalar>(h: &Hypergraph<S>) -> Result<(S, Vec<usize>)> {
    let n = h.num_vertices();
    if n < 2 {
        return Err(Error::InvalidVertexSet("need at least two vertices".into()));
    }
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::InvalidConfig(format!(
            "exhaustive conductance limited to {MAX_EXHAUSTIVE_VERTICES} vertices, got {n}"
        )));
    }
    let mut best: Option<(S, u32)> = None;
    let mut mask = vec![false; n];
    // Φ(S) = Φ(Ŝ), so sets containing the last vertex are skipped.
    for bits in 1u32..(1u32 << (n - 1)) {
        for (v, m) in mask.iter_mut().enumerate() {
            *m = bits >> v & 1 == 1;
        }
        let (cut, vs, vc) = cut_and_volume_mask(h, &mask)?;
        let min = vs.min(vc);
        if !(min > S::zero()) {
            continue;
        }
        let phi = cut / min;
        if best.map_or(true, |(b, _)| phi < b) {
            best = Some((phi, bits));
        }
    }
    let (phi, bits) = best.ok_or_else(|| Error::InvalidVertexSet("every proper subset has zero volume".into()))?;
    Ok((phi, (0..n).filter(|&v| bits >> v & 1 == 1).collect()))
}

/// Quality summary of a clustering.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationReport<S> {
    pub phi_avg: S,
    pub per_cluster_phi: Vec<S>,
    /// Clusters whose smaller side had zero volume; scored as `Φ = 1`.
    pub zero_volume_clusters: Vec<usize>,
    /// Total weight of hyperedges spanning more than one cluster.
    pub cut_size: S,
    pub nr: f64,
    /// Heaviest cluster weight over the ideal weight `W / k`.
    pub balance: S,
    pub num_clusters: usize,
}

impl<S: Scalar> EvaluationReport<S> {
    /// Key/value TSV with the per-cluster conductances appended.
    pub fn write_tsv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "metric\tvalue")?;
        writeln!(out, "num_clusters\t{}", self.num_clusters)?;
        writeln!(out, "phi_avg\t{}", self.phi_avg)?;
        writeln!(out, "cut_size\t{}", self.cut_size)?;
        writeln!(out, "nr\t{}", self.nr)?;
        writeln!(out, "balance\t{}", self.balance)?;
        writeln!(out, "zero_volume_clusters\t{}", self.zero_volume_clusters.len())?;
        writeln!(out)?;
        writeln!(out, "cluster\tphi\tzero_volume")?;
        for (c, phi) in self.per_cluster_phi.iter().enumerate() {
            let flagged = self.zero_volume_clusters.binary_search(&c).is_ok();
            writeln!(out, "{c}\t{phi}\t{}", u8::from(flagged))?;
        }
        Ok(())
    }

    /// Aligned table for terminals.
    pub fn to_table(&self) -> String {
        format!(
            "clusters      {}\nphi_avg       {:.6}\ncut_size      {}\nNR            {:.4}\nbalance       {:.4}\nzero-volume   {}\n",
            self.num_clusters,
            self.phi_avg.as_f64(),
            self.cut_size,
            self.nr,
            self.balance.as_f64(),
            self.zero_volume_clusters.len()
        )
    }
}

/// Per-cluster conductance, `Φ_avg` (unweighted mean), cut, NR and balance.
pub fn evaluate_clustering<S: Scalar>(h: &Hypergraph<S>, a: &ClusterAssignment) -> Result<EvaluationReport<S>> {
    let n = h.num_vertices();
    if a.num_vertices() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.num_vertices(),
        });
    }
    let k = a.num_clusters();
    let mut cut = vec![S::zero(); k];
    let mut vol = vec![S::zero(); k];
    let mut vol_all = S::zero();
    let mut cut_size = S::zero();
    let mut touched: Vec<usize> = Vec::new();
    for (_, pins, w) in h.edges() {
        touched.clear();
        for &v in pins {
            let c = a.cluster(v);
            vol[c] += w;
            touched.push(c);
        }
        vol_all += w * S::of_usize(pins.len());
        touched.sort_unstable();
        touched.dedup();
        if touched.len() > 1 {
            cut_size += w;
            for &c in &touched {
                cut[c] += w;
            }
        }
    }

    let mut per_cluster_phi = Vec::with_capacity(k);
    let mut zero_volume_clusters = Vec::new();
    for c in 0..k {
        let min = vol[c].min(vol_all - vol[c]);
        if min > S::zero() {
            per_cluster_phi.push(cut[c] / min);
        } else {
            per_cluster_phi.push(S::one());
            zero_volume_clusters.push(c);
        }
    }
    let phi_avg = if k == 0 {
        S::zero()
    } else {
        per_cluster_phi.iter().copied().fold(S::zero(), |s, x| s + x) / S::of_usize(k)
    };

    let mut weight = vec![S::zero(); k];
    for v in 0..n {
        weight[a.cluster(v)] += h.vertex_weight(v);
    }
    let total = h.total_vertex_weight();
    let heaviest = weight.iter().copied().fold(S::zero(), S::max);
    let balance = if k > 0 && total > S::zero() {
        heaviest / (total / S::of_usize(k))
    } else {
        S::zero()
    };

    Ok(EvaluationReport {
        phi_avg,
        per_cluster_phi,
        zero_volume_clusters,
        cut_size,
        nr: node_reduction(n, k),
        balance,
        num_clusters: k,
    })
}

/// Denominator used for hyperedge `e`'s rating term and whether the guard
/// replaced `R_e − 1`.
pub fn rating_denominator<S: Scalar>(r_e: S) -> (S, bool) {
    let d = r_e - S::one();
    if d.abs() > S::of(RATING_GUARD_BAND) {
        (d, false)
    } else {
        (S::of(RATING_GUARD), true)
    }
}

/// `r(p, q) = Σ_{e ⊇ {p,q}} w(e) / (R_e − 1)`, guarded near `R_e = 1`.
pub fn rating<S: Scalar>(h: &Hypergraph<S>, r: &ResistanceVector<S>, p: usize, q: usize) -> Result<S> {
    let n = h.num_vertices();
    for v in [p, q] {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, num_vertices: n });
        }
    }
    if p == q {
        return Err(Error::InvalidVertexSet("rating needs two distinct vertices".into()));
    }
    let (small, other) = if h.incident_edges(p).len() <= h.incident_edges(q).len() { (p, q) } else { (q, p) };
    let mut acc = S::zero();
    for &e in h.incident_edges(small) {
        if h.edge(e).binary_search(&other).is_ok() {
            let (d, _) = rating_denominator(r.get(e));
            acc += h.edge_weight(e) / d;
        }
    }
    Ok(acc)
}

/// One row of the rating export.
#[derive(Clone, Debug, PartialEq)]
pub struct RatingRow<S> {
    pub edge: usize,
    pub weight: S,
    pub resistance: S,
    pub denominator: S,
    pub guarded: bool,
}

pub fn rating_rows<S: Scalar>(h: &Hypergraph<S>, r: &ResistanceVector<S>) -> Vec<RatingRow<S>> {
    h.edges()
        .map(|(e, _, w)| {
            let (denominator, guarded) = rating_denominator(r.get(e));
            RatingRow {
                edge: e,
                weight: w,
                resistance: r.get(e),
                denominator,
                guarded,
            }
        })
        .collect()
}

/// Four-column TSV `edge weight resistance denominator`. Guarded hyperedges
/// are listed in a leading `% guarded-edges:` comment.
pub fn write_rating_tsv<S: Scalar, W: Write>(rows: &[RatingRow<S>], out: &mut W) -> Result<()> {
    let guarded: Vec<String> = rows.iter().filter(|r| r.guarded).map(|r| r.edge.to_string()).collect();
    writeln!(out, "% guarded-edges: {}", if guarded.is_empty() { "none".to_string() } else { guarded.join(",") })?;
    for r in rows {
        writeln!(out, "{}\t{}\t{}\t{}", r.edge, r.weight, r.resistance, r.denominator)?;
    }
    Ok(())
}
