//! End-to-end run on the nested-spheres benchmark: points on two
//! concentric sphere surfaces of very different density, the classic
//! case where a single global radius must not wash out the structure.
//!
//! ```bash
//! cargo run --release -p knn-dbscan --example cluster_two_spheres
//! ```

use knn_dbscan::bsp::RankExecution;
use knn_dbscan::datasets::gen_two_spheres;
use knn_dbscan::eval::{cluster_count, nmi};
use knn_dbscan::knng::{build_exact_knng, neighbor_stats};
use knn_dbscan::parallel::Workers;
use knn_dbscan::partition::PartitionStrategy;
use knn_dbscan::pipeline::{cluster_auto, ClusterConfig};
use knn_dbscan::points::PointSet;

fn main() {
    let (points, truth) = gen_two_spheres(1_000, 3_000, 10, 0.1, 1.0, 25).unwrap();
    let workers = Workers::available();

    // Radius from the outer sphere's own neighbor statistics: median
    // 10th-neighbor distance over median 2nd-neighbor distance.
    let outer_coords: Vec<f64> = (1_000..4_000)
        .flat_map(|i| points.point(i).to_vec())
        .collect();
    let outer = PointSet::new(outer_coords, 10).unwrap();
    let outer_graph = build_exact_knng(&outer, 10, &workers).unwrap();
    let r10 = neighbor_stats(&outer_graph, 10).unwrap().median_dist;
    let r2 = neighbor_stats(&outer_graph, 2).unwrap().median_dist;
    let eps = r10 / r2;
    println!("outer sphere: median r10 {r10:.3}, median r2 {r2:.3} -> eps {eps:.3}");

    let graph = build_exact_knng(&points, 20, &workers).unwrap();
    let cfg = ClusterConfig {
        eps,
        min_pts: 10,
        parts: 4,
        strategy: PartitionStrategy::Geometric,
        workers: workers.count(),
        rank_execution: RankExecution::Concurrent,
    };
    let out = cluster_auto(&points, &graph, None, &cfg).unwrap();

    println!(
        "clusters {}  core {}  border {}  noise {}",
        cluster_count(&out.labels),
        out.metrics.core,
        out.metrics.border,
        out.metrics.noise
    );
    println!("nmi vs ground truth: {:.4}", nmi(&out.labels, &truth).unwrap());
    println!("metrics: {}", out.metrics.to_json());
}
