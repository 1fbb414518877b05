//! Min-max correlation clustering.
//!
//! Given the positive edges of a complete signed graph, find a partition of
//! the vertices minimizing the largest number of disagreements at any single
//! vertex. The sequential solver returns a clustering within a factor
//! `3 + ε` of optimal (exactly 3 with exact similarity queries); the
//! streaming simulator reaches the same factor in one pass per guess with
//! `O(n log n / ε²)` words of working memory.
//!
//! ```
//! use minmaxcc::{load_graph, solve, SolveMode};
//!
//! let g = load_graph("3\n0 1\n1 2\n0 2\n").unwrap().graph;
//! let s = solve(&g, 0.0, SolveMode::Exact, 0).unwrap();
//! assert_eq!(s.report.obj, 0);
//! assert_eq!(s.clustering.clusters(), &[vec![0, 1, 2]]);
//! ```

pub mod cluster;
pub mod error;
pub mod eta;
pub mod graph;
pub mod oracle;
pub mod similarity;
pub mod stream;

pub use cluster::{
    cluster_phi, high_degree_clustering, objective, solve, solve_with, Clustering, DisagreementReport, HighDegreeMode,
    PhiOutcome, PhiVerdict, Solution, SolveConfig, SolveMode,
};
pub use error::{Error, Result};
pub use eta::Eta;
pub use graph::{load_graph, planted_instance, EdgeListReader, PlantedInstance, PositiveGraph, VertexPartitionByDegree};
pub use oracle::{brute_force_opt, check_structural, enumerate_partitions, OptResult};
pub use similarity::{SimilarityOracle, SketchSet};
