//! The clustering is a pure function of the graph and parameters: the
//! number of partition groups and the partitioning strategy change the
//! cut-edge traffic, never the labels.
//!
//! ```bash
//! cargo run --release -p knn-dbscan --example partition_independence
//! ```

use knn_dbscan::bsp::RankExecution;
use knn_dbscan::datasets::gen_gaussian_blobs;
use knn_dbscan::eval::same_partition;
use knn_dbscan::knng::build_exact_knng;
use knn_dbscan::parallel::Workers;
use knn_dbscan::partition::PartitionStrategy;
use knn_dbscan::pipeline::{cluster_graph, ClusterConfig};

fn main() {
    let (points, _) = gen_gaussian_blobs(4, 300, 3, 0.5, 7.0, 123).unwrap();
    let workers = Workers::available();
    let graph = build_exact_knng(&points, 12, &workers).unwrap();

    let mut baseline: Option<Vec<i64>> = None;
    println!("parts  strategy      cut_edges  labels");
    for parts in [1usize, 2, 4, 8] {
        for strategy in [
            PartitionStrategy::Block,
            PartitionStrategy::Random { seed: 7 },
            PartitionStrategy::Geometric,
        ] {
            let cfg = ClusterConfig {
                eps: 0.8,
                min_pts: 8,
                parts,
                strategy,
                workers: workers.count(),
                rank_execution: RankExecution::Concurrent,
            };
            let out = cluster_graph(&points, &graph, &cfg).unwrap();
            let verdict = match &baseline {
                None => {
                    baseline = Some(out.labels.clone());
                    "baseline"
                }
                Some(b) => {
                    assert!(same_partition(b, &out.labels).unwrap());
                    if b == &out.labels {
                        "identical"
                    } else {
                        "same partition"
                    }
                }
            };
            println!(
                "{parts:<6} {:<13} {:<10} {verdict}",
                format!("{strategy:?}"),
                out.metrics.cut_edges
            );
        }
    }
    println!("\nevery configuration produced the same clustering");
}
