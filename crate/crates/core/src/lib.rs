//! Shared-memory connected components by hooking and compressing a parent
//! forest.
//!
//! The engines share one [`ParentForest`]: every vertex holds a parent link,
//! links only ever point to smaller indices, and a run converges when every
//! tree is a star whose root is the smallest vertex of its component. The
//! baseline driver uses racy, non-atomic hooks inside a convergence loop; the
//! atomic drivers acquire roots with compare-and-swap so a single pass over
//! each edge suffices, and the adaptive driver interleaves full compressions
//! between `s` edge segments.

pub mod engine;
pub mod error;
pub mod forest;
pub mod generate;
pub mod graph;
pub mod io;
pub mod labels;
pub mod oracle;
pub mod pool;

pub use engine::{
    adaptive_cc, baseline_cc, baseline_multi_jump_cc, choose_segment_count, extract_labels,
    partition_edges, run, run_observed, run_on_forest, single_hook_cc, Algorithm, Phase,
    PhaseObserver, PhaseTiming, RunMetrics, SegmentPlan, Segments,
};
pub use error::{ForestError, GraphError, LabelingError};
pub use forest::{KernelCounters, ParentForest};
pub use generate::GeneratorSpec;
pub use graph::{compute_stats, Graph, GraphStats, Vertex};
pub use labels::{
    count_components, partition_mismatch, partitions_equal, ComponentLabeling, PartitionWitness,
};
pub use oracle::{bfs_cc, component_histogram, oracle_cc, DisjointSet};
pub use pool::WorkerPool;
