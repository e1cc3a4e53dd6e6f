//! Density-based clustering over k-nearest-neighbor graphs.
//!
//! The classic eps-neighborhood formulation of density clustering is
//! recast onto a directed kNN graph: a point is core when its
//! `min_pts`-th nearest neighbor (counting itself) lies within `eps`,
//! and core points connect when either appears among the other's first
//! `min_pts` neighbors. Core components are computed as the trees of a
//! Boruvka minimum spanning forest, built locally per partition group
//! and then joined across groups using only cut edges through a
//! bulk-synchronous exchange — the partitioning changes the work
//! distribution, never the clustering.
//!
//! Start with [`pipeline::cluster_points`] for end-to-end runs, or walk
//! the stages individually: [`knng::build_exact_knng`],
//! [`classify::classify_points`], [`partition::make_partition`],
//! [`local_mst::parallel_local_mst`], [`cut_mst::distributed_cut_mst`],
//! [`border::cluster_border`]. Brute-force references for testing live
//! in [`oracle`], metrics in [`eval`], synthetic data in [`datasets`].
//!
//! The `examples/` directory has one runnable program per capability;
//! `cargo run -p knn-dbscan --example cluster_two_spheres` is a good
//! first stop.

pub mod border;
pub mod bsp;
pub mod classify;
pub mod cli;
pub mod cut_mst;
pub mod datasets;
pub mod edge;
pub mod error;
pub mod eval;
pub mod io;
pub mod knng;
pub mod local_mst;
pub mod oracle;
pub mod parallel;
pub mod partition;
pub mod pipeline;
pub mod points;
pub mod rootfind;

pub use classify::{Params, PointClass};
pub use error::{Error, Result};
pub use knng::{build_exact_knng, neighbor_stats, NeighborGraph};
pub use pipeline::{cluster_points, ClusterConfig, RunOutput};
pub use points::PointSet;
