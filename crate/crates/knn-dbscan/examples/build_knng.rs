//! Build an exact k-nearest-neighbor graph and read off the neighbor
//! distance statistics used to pick clustering radii.
//!
//! ```bash
//! cargo run --release -p knn-dbscan --example build_knng
//! ```

use knn_dbscan::datasets::gen_gaussian_blobs;
use knn_dbscan::knng::{build_exact_knng, neighbor_stats};
use knn_dbscan::parallel::Workers;

fn main() {
    let (points, _) = gen_gaussian_blobs(3, 500, 3, 0.5, 6.0, 42).unwrap();
    let workers = Workers::available();
    let graph = build_exact_knng(&points, 16, &workers).unwrap();

    println!(
        "graph: {} points, {} entries per point (self first)",
        graph.n_points(),
        graph.k_max()
    );
    for k in [2, 4, 8, 16] {
        let stats = neighbor_stats(&graph, k).unwrap();
        println!(
            "k={:2}: median distance {:.4}, mean distance {:.4}",
            k, stats.median_dist, stats.mean_dist
        );
    }

    let row = graph.neighbors(0);
    println!("\nfirst point's list (target, weight):");
    for e in row.iter().take(6) {
        println!("  ({:4}, {:.4})", e.target, e.weight);
    }
}
