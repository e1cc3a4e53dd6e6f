//! Core / border / noise classification straight from the neighbor
//! graph: a point is core when its min_pts-th entry (counting itself)
//! lies within eps.
//!
//! ```bash
//! cargo run --release -p knn-dbscan --example classify_points
//! ```

use knn_dbscan::classify::{classify_points, Params, PointClass};
use knn_dbscan::datasets::gen_gaussian_blobs;
use knn_dbscan::knng::build_exact_knng;
use knn_dbscan::parallel::Workers;

fn main() {
    let (points, _) = gen_gaussian_blobs(2, 150, 2, 0.4, 6.0, 9).unwrap();
    let workers = Workers::available();
    let graph = build_exact_knng(&points, 12, &workers).unwrap();

    println!("eps     minpts  core  border  noise");
    for (eps, min_pts) in [(0.15, 4), (0.3, 4), (0.3, 8), (0.6, 8), (1.2, 8)] {
        let params = Params::new(eps, min_pts).unwrap();
        let classes = classify_points(&graph, &params, &workers).unwrap();
        let count = |class: PointClass| classes.iter().filter(|&&c| c == class).count();
        println!(
            "{eps:<7} {min_pts:<7} {:<5} {:<7} {}",
            count(PointClass::Core),
            count(PointClass::Border),
            count(PointClass::Noise)
        );
    }
}
