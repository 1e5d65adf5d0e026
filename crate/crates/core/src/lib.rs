//! Spectral hypergraph coarsening.
//!
//! Hyperedge effective resistances are estimated from Krylov-subspace
//! embeddings of the star and clique expansions. Hyperedges with low
//! resistance are contracted level by level, and vertices left isolated are
//! merged into their nearest neighboring cluster. The [`metrics`] module
//! scores the resulting clusters by conductance and exports resistance
//! ratings for external partitioners.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.
//!
//! ```
//! use hypercoarsen::{coarsen_multilevel, evaluate_clustering, CoarsenConfig, Hypergraph64};
//!
//! let h = Hypergraph64::from_edges(6, [vec![0, 1, 2], vec![1, 2], vec![2, 3], vec![3, 4, 5], vec![4, 5]]).unwrap();
//! let hier = coarsen_multilevel(&h, &CoarsenConfig::default()).unwrap();
//! let report = evaluate_clustering(&h, hier.composed_clusters()).unwrap();
//! assert!(report.num_clusters <= 6);
//! ```

pub mod coarsen;
pub mod embedding;
pub mod error;
pub mod expansion;
pub mod generate;
pub mod hypergraph;
pub mod localcluster;
pub mod metrics;
pub mod resistance;
pub mod scalar;

pub use coarsen::{
    accumulate_resistance, coarsen_multilevel, contract_hypergraph, contract_level, CoarsenConfig, ContractionPolicy,
    LevelSummary,
};
pub use embedding::{build_embedding_pool, EmbeddingConfig};
pub use error::{Error, Result};
pub use expansion::{build_clique, build_star, normalized_adjacency_apply, ExpansionKind};
pub use hypergraph::{parse_hgr, read_clusters, write_clusters, write_hgr, ClusterAssignment, HypergraphBuilder};
pub use localcluster::{merge_isolated, LocalClusterReport};
pub use metrics::{conductance, cut_and_volume, evaluate_clustering, min_conductance, rating};
pub use resistance::{estimate_resistances, nonlinear_quadratic_form};
pub use scalar::Scalar;

pub type Hypergraph64 = hypergraph::Hypergraph<f64>;
pub type Hypergraph32 = hypergraph::Hypergraph<f32>;
pub type ExpansionGraph64 = expansion::ExpansionGraph<f64>;
pub type EmbeddingPool64 = embedding::EmbeddingPool<f64>;
pub type ResistanceVector64 = resistance::ResistanceVector<f64>;
pub type LevelState64 = coarsen::LevelState<f64>;
pub type CoarseningHierarchy64 = coarsen::CoarseningHierarchy<f64>;
pub type EvaluationReport64 = metrics::EvaluationReport<f64>;
