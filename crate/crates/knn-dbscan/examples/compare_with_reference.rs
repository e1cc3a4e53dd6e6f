//! Side-by-side with the brute-force eps-ball reference: the
//! graph-based clustering refines it. Every graph-based cluster sits
//! inside one ball-based cluster, so the graph route can only split
//! clusters, never merge them.
//!
//! ```bash
//! cargo run --release -p knn-dbscan --example compare_with_reference
//! ```

use knn_dbscan::classify::Params;
use knn_dbscan::datasets::gen_gaussian_blobs;
use knn_dbscan::eval::{cluster_count, nmi};
use knn_dbscan::knng::build_exact_knng;
use knn_dbscan::oracle::dbscan_reference;
use knn_dbscan::parallel::Workers;
use knn_dbscan::pipeline::{cluster_auto, ClusterConfig};

fn main() {
    let (points, _) = gen_gaussian_blobs(3, 120, 2, 0.5, 6.0, 31).unwrap();
    let n = points.n_points();
    let workers = Workers::available();
    let params = Params::new(0.6, 5).unwrap();

    let graph = build_exact_knng(&points, n, &workers).unwrap();
    let cfg = ClusterConfig {
        eps: params.eps,
        min_pts: params.min_pts,
        workers: workers.count(),
        ..ClusterConfig::single_threaded(params.eps, params.min_pts)
    };
    let ours = cluster_auto(&points, &graph, None, &cfg).unwrap().labels;
    let reference = dbscan_reference(&points, &params);

    println!(
        "graph route: {} clusters; ball reference: {} clusters; nmi {:.4}",
        cluster_count(&ours),
        cluster_count(&reference),
        nmi(&ours, &reference).unwrap()
    );

    // Containment check: one ball cluster per graph cluster.
    let mut spans: std::collections::HashMap<i64, std::collections::BTreeSet<i64>> =
        std::collections::HashMap::new();
    for i in 0..n {
        if ours[i] >= 0 && reference[i] >= 0 {
            spans.entry(ours[i]).or_default().insert(reference[i]);
        }
    }
    for (cluster, targets) in &spans {
        assert_eq!(targets.len(), 1, "cluster {cluster} spans {targets:?}");
    }
    println!("each graph-based cluster maps into exactly one ball-based cluster");
    assert!(cluster_count(&ours) >= cluster_count(&reference));
    println!("and the graph-based cluster count is never smaller");
}
