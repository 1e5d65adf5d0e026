//! Multilevel resistance-threshold contraction.
//!
//! Each level estimates hyperedge resistances, adds the resistance carried
//! by supernodes from earlier levels, then contracts low-resistance
//! hyperedges in ascending order as long as none of their vertices has
//! already been grouped at this level.

use std::collections::HashMap;
use std::io::Write;
use std::sync::Arc;

use crate::embedding::{build_embedding_pool, EmbeddingConfig, DEFAULT_RHO};
use crate::error::{Error, Result};
use crate::hypergraph::{ClusterAssignment, Hypergraph};
use crate::localcluster::{merge_isolated, LocalClusterReport};
use crate::resistance::{estimate_resistances, ResistanceVector};
use crate::scalar::Scalar;

pub const DEFAULT_LEVELS: usize = 3;
pub const DEFAULT_QUANTILE: f64 = 0.5;

/// How the contraction threshold `δ` is chosen at each level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ContractionPolicy {
    /// Fixed `δ`.
    Absolute(f64),
    /// `δ` is the accumulated resistance at rank `⌊q·|E|⌋` (0-based) in
    /// ascending order, so at most `⌊q·|E|⌋` hyperedges fall strictly below
    /// it and the highest-resistance hyperedge never does.
    Quantile(f64),
}

impl Default for ContractionPolicy {
    fn default() -> Self {
        ContractionPolicy::Quantile(DEFAULT_QUANTILE)
    }
}

impl ContractionPolicy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ContractionPolicy::Absolute(x) if !x.is_finite() => {
                Err(Error::InvalidConfig(format!("absolute threshold must be finite, got {x}")))
            }
            ContractionPolicy::Quantile(q) if !(q > 0.0 && q < 1.0) => {
                Err(Error::InvalidConfig(format!("quantile must lie in (0, 1), got {q}")))
            }
            _ => Ok(()),
        }
    }

    /// Threshold for the given (accumulated) resistances.
    pub fn threshold<S: Scalar>(&self, r: &ResistanceVector<S>) -> S {
        match *self {
            ContractionPolicy::Absolute(x) => S::of(x),
            ContractionPolicy::Quantile(q) => {
                let m = r.len();
                if m == 0 {
                    return S::infinity();
                }
                let rank = ((q * m as f64).floor() as usize).min(m - 1);
                r.get(r.order()[rank])
            }
        }
    }
}

/// One level of the hierarchy.
#[derive(Clone, Debug)]
pub struct LevelState<S> {
    pub(crate) fine: Arc<Hypergraph<S>>,
    pub(crate) coarse: Arc<Hypergraph<S>>,
    pub(crate) clusters: ClusterAssignment,
    pub(crate) eta: Vec<S>,
    pub(crate) coarse_eta: Vec<S>,
    pub(crate) resistances: ResistanceVector<S>,
    pub(crate) delta: S,
    pub(crate) contracted_edges: Vec<usize>,
    pub(crate) local_report: Option<LocalClusterReport>,
}

impl<S: Scalar> LevelState<S> {
    pub fn fine(&self) -> &Hypergraph<S> {
        &self.fine
    }

    pub fn coarse(&self) -> &Hypergraph<S> {
        &self.coarse
    }

    pub fn coarse_arc(&self) -> Arc<Hypergraph<S>> {
        Arc::clone(&self.coarse)
    }

    /// Fine vertex → coarse vertex.
    pub fn clusters(&self) -> &ClusterAssignment {
        &self.clusters
    }

    /// Carried resistance `η` of each fine vertex.
    pub fn eta(&self) -> &[S] {
        &self.eta
    }

    /// Carried resistance of each coarse vertex, the `η` of the next level.
    pub fn coarse_eta(&self) -> &[S] {
        &self.coarse_eta
    }

    /// Accumulated resistances used for contraction.
    pub fn resistances(&self) -> &ResistanceVector<S> {
        &self.resistances
    }

    pub fn delta(&self) -> S {
        self.delta
    }

    pub fn contracted_edges(&self) -> &[usize] {
        &self.contracted_edges
    }

    pub fn local_report(&self) -> Option<&LocalClusterReport> {
        self.local_report.as_ref()
    }
}

/// `r'_e = Σ_{v∈e} η(v) + r_e`.
pub fn accumulate_resistance<S: Scalar>(
    h: &Hypergraph<S>,
    r: &ResistanceVector<S>,
    eta: &[S],
) -> Result<ResistanceVector<S>> {
    if eta.len() != h.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: h.num_vertices(),
            found: eta.len(),
        });
    }
    let acc = h
        .edges()
        .map(|(e, pins, _)| {
            let mut s = S::zero();
            for &v in pins {
                s += eta[v];
            }
            s + r.get(e)
        })
        .collect();
    Ok(ResistanceVector::from_values(acc, r.qh().to_vec()))
}

/// Collapses `h` through `clusters`: pins are mapped and deduplicated,
/// hyperedges that collapse to one vertex are dropped, and identical coarse
/// hyperedges are merged by summing weights (first occurrence keeps its
/// position). Coarse vertex weights are sums of member weights.
pub fn contract_hypergraph<S: Scalar>(h: &Hypergraph<S>, clusters: &ClusterAssignment) -> Hypergraph<S> {
    let k = clusters.num_clusters();
    let mut vertex_weights = vec![S::zero(); k];
    for v in 0..h.num_vertices() {
        vertex_weights[clusters.cluster(v)] += h.vertex_weight(v);
    }

    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut weights: Vec<S> = Vec::new();
    let mut scratch = Vec::new();
    for (_, pins, w) in h.edges() {
        scratch.clear();
        scratch.extend(pins.iter().map(|&p| clusters.cluster(p)));
        scratch.sort_unstable();
        scratch.dedup();
        if scratch.len() < 2 {
            continue;
        }
        match index.get(scratch.as_slice()) {
            Some(&i) => weights[i] += w,
            None => {
                index.insert(scratch.clone(), edges.len());
                edges.push(scratch.clone());
                weights.push(w);
            }
        }
    }

    let mut offsets = Vec::with_capacity(edges.len() + 1);
    offsets.push(0);
    let mut flat = Vec::with_capacity(edges.iter().map(Vec::len).sum());
    for e in &edges {
        flat.extend_from_slice(e);
        offsets.push(flat.len());
    }
    Hypergraph::from_sanitized(k, offsets, flat, weights, vertex_weights, 0)
}

/// Contracts hyperedges with `r_e < δ` in ascending resistance order,
/// skipping any hyperedge that touches an already-grouped vertex.
///
/// `r` must already include carried resistance (see
/// [`accumulate_resistance`]). Coarse vertices are numbered by their
/// smallest fine member.
pub fn contract_level<S: Scalar>(
    fine: impl Into<Arc<Hypergraph<S>>>,
    r: ResistanceVector<S>,
    eta: Vec<S>,
    policy: ContractionPolicy,
) -> Result<LevelState<S>> {
    let fine = fine.into();
    let n = fine.num_vertices();
    let m = fine.num_edges();
    if r.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: r.len() });
    }
    if eta.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: eta.len() });
    }
    policy.validate()?;
    let delta = policy.threshold(&r);

    const FREE: usize = usize::MAX;
    // provisional label: edge id for contracted groups, m + v for singletons
    let mut label = vec![FREE; n];
    let mut contracted = Vec::new();
    for &e in r.order() {
        if !(r.get(e) < delta) {
            break;
        }
        let pins = fine.edge(e);
        if pins.iter().all(|&p| label[p] == FREE) {
            for &p in pins {
                label[p] = e;
            }
            contracted.push(e);
        }
    }
    for (v, l) in label.iter_mut().enumerate() {
        if *l == FREE {
            *l = m + v;
        }
    }
    let clusters = ClusterAssignment::from_labels(&label);

    let mut coarse_eta = vec![S::zero(); clusters.num_clusters()];
    for v in 0..n {
        let c = clusters.cluster(v);
        coarse_eta[c] = if label[v] < m { r.get(label[v]) } else { eta[v] };
    }
    let coarse = contract_hypergraph(&fine, &clusters);

    Ok(LevelState {
        fine,
        coarse: Arc::new(coarse),
        clusters,
        eta,
        coarse_eta,
        resistances: r,
        delta,
        contracted_edges: contracted,
        local_report: None,
    })
}

/// Settings for [`coarsen_multilevel`].
#[derive(Clone, Debug, PartialEq)]
pub struct CoarsenConfig {
    pub levels: usize,
    pub rho: usize,
    pub seed: u64,
    pub policy: ContractionPolicy,
    pub local_clustering: bool,
    pub embedding: EmbeddingConfig,
    /// Stop after the first level whose cumulative node reduction reaches
    /// this ratio.
    pub target_nr: Option<f64>,
}

impl Default for CoarsenConfig {
    fn default() -> Self {
        Self {
            levels: DEFAULT_LEVELS,
            rho: DEFAULT_RHO,
            seed: 42,
            policy: ContractionPolicy::default(),
            local_clustering: true,
            embedding: EmbeddingConfig::default(),
            target_nr: None,
        }
    }
}

impl CoarsenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.levels < 1 {
            return Err(Error::InvalidConfig("levels must be >= 1".into()));
        }
        if self.rho < 1 {
            return Err(Error::InvalidConfig("rho must be >= 1".into()));
        }
        if self.embedding.max_clique_cardinality < 2 {
            return Err(Error::InvalidConfig("max clique cardinality must be >= 2".into()));
        }
        if let Some(t) = self.target_nr {
            if !(0.0..1.0).contains(&t) {
                return Err(Error::InvalidConfig(format!("target NR must lie in [0, 1), got {t}")));
            }
        }
        self.policy.validate()
    }

    /// Seed of level `l`; level 0 uses `seed` itself.
    pub fn level_seed(&self, level: usize) -> u64 {
        self.seed ^ (level as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

/// Per-level statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelSummary {
    pub level: usize,
    pub fine_vertices: usize,
    pub fine_edges: usize,
    pub coarse_vertices: usize,
    pub coarse_edges: usize,
    pub contracted: usize,
    pub delta: f64,
    /// Cumulative node reduction relative to the original hypergraph.
    pub nr: f64,
    pub local: Option<LocalClusterReport>,
}

/// Output of [`coarsen_multilevel`].
#[derive(Clone, Debug)]
pub struct CoarseningHierarchy<S> {
    original: Arc<Hypergraph<S>>,
    levels: Vec<LevelState<S>>,
    composed: ClusterAssignment,
    warnings: Vec<String>,
}

impl<S: Scalar> CoarseningHierarchy<S> {
    pub fn levels(&self) -> &[LevelState<S>] {
        &self.levels
    }

    /// Original vertex → final cluster.
    pub fn composed_clusters(&self) -> &ClusterAssignment {
        &self.composed
    }

    pub fn original(&self) -> &Hypergraph<S> {
        &self.original
    }

    /// Coarsest hypergraph (the original if no level contracted anything).
    pub fn coarsest(&self) -> &Hypergraph<S> {
        self.levels.last().map_or(&self.original, |l| l.coarse())
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Fraction of original vertices removed.
    pub fn nr(&self) -> f64 {
        node_reduction(self.original.num_vertices(), self.composed.num_clusters())
    }

    pub fn summaries(&self) -> Vec<LevelSummary> {
        let n0 = self.original.num_vertices();
        self.levels
            .iter()
            .enumerate()
            .map(|(i, l)| LevelSummary {
                level: i,
                fine_vertices: l.fine.num_vertices(),
                fine_edges: l.fine.num_edges(),
                coarse_vertices: l.coarse.num_vertices(),
                coarse_edges: l.coarse.num_edges(),
                contracted: l.contracted_edges.len(),
                delta: l.delta.as_f64(),
                nr: node_reduction(n0, l.coarse.num_vertices()),
                local: l.local_report.clone(),
            })
            .collect()
    }

    /// Per-level summary table with a header row.
    pub fn write_levels_tsv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(
            out,
            "level\tvertices\tedges\tcoarse_vertices\tcoarse_edges\tcontracted\tdelta\tnr\tseeds_found\tseeds_merged\tseeds_absorbed\tseeds_singleton"
        )?;
        for s in self.summaries() {
            let local = match &s.local {
                Some(r) => [r.seeds_found, r.seeds_merged, r.seeds_absorbed, r.seeds_left_singleton].map(|x| x.to_string()),
                None => ["-", "-", "-", "-"].map(String::from),
            };
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                s.level,
                s.fine_vertices,
                s.fine_edges,
                s.coarse_vertices,
                s.coarse_edges,
                s.contracted,
                s.delta,
                s.nr,
                local.join("\t")
            )?;
        }
        Ok(())
    }
}

pub(crate) fn node_reduction(original: usize, remaining: usize) -> f64 {
    if original == 0 {
        0.0
    } else {
        1.0 - remaining as f64 / original as f64
    }
}

/// Runs resistance estimation, accumulation, contraction and (optionally)
/// local clustering for up to `cfg.levels` levels. Stops early when a level
/// contracts nothing or no embedding can be built.
pub fn coarsen_multilevel<S: Scalar>(h: &Hypergraph<S>, cfg: &CoarsenConfig) -> Result<CoarseningHierarchy<S>> {
    cfg.validate()?;
    let original = Arc::new(h.clone());
    let n0 = original.num_vertices();
    let mut current = Arc::clone(&original);
    let mut eta = vec![S::zero(); n0];
    let mut composed = ClusterAssignment::identity(n0);
    let mut levels = Vec::new();
    let mut warnings = Vec::new();

    for level in 0..cfg.levels {
        if current.num_edges() == 0 {
            break;
        }
        let pool = build_embedding_pool(&current, cfg.rho, cfg.level_seed(level), &cfg.embedding);
        if pool.is_empty() {
            warnings.extend(pool.warnings().iter().map(|w| format!("level {level}: {w}")));
            break;
        }
        let raw = estimate_resistances(&current, &pool)?;
        let acc = accumulate_resistance(&current, &raw, &eta)?;
        let mut state = contract_level(Arc::clone(&current), acc, eta, cfg.policy)?;
        if state.contracted_edges.is_empty() {
            break;
        }
        if cfg.local_clustering {
            state = merge_isolated(state, &pool)?;
        }
        composed = composed.compose(&state.clusters)?;
        eta = state.coarse_eta.clone();
        current = state.coarse_arc();
        levels.push(state);
        if let Some(target) = cfg.target_nr {
            if node_reduction(n0, current.num_vertices()) >= target {
                break;
            }
        }
    }

    Ok(CoarseningHierarchy {
        original,
        levels,
        composed,
        warnings,
    })
}
