//! Directed approximate neighbor lists can send every subtree's minimum
//! edge around a loop: 0 -> 1 -> 2 -> 3 -> 0. Pointer jumping alone
//! never roots such a component; the cycle walk detects it and picks
//! the minimum index as root.
//!
//! ```bash
//! cargo run --release -p knn-dbscan --example cycle_breaking
//! ```

use knn_dbscan::knng::{NeighborEntry, NeighborGraph};
use knn_dbscan::local_mst::{parallel_local_mst, GroupContext, UNLABELED};
use knn_dbscan::parallel::Workers;
use knn_dbscan::rootfind::{break_cycles, break_symmetry, pointer_jump};

fn main() {
    // Per-point lists of an approximate directed graph whose minimum
    // edges are 0->1 (0.12), 1->2 (0.15), 2->3 (0.14), 3->0 (0.13).
    let rows = vec![
        vec![(0usize, 0.0), (1, 0.12), (3, 0.13)],
        vec![(1, 0.0), (2, 0.15), (3, 0.17)],
        vec![(2, 0.0), (3, 0.14), (1, 0.15)],
        vec![(3, 0.0), (0, 0.13), (2, 0.14)],
    ];
    let entries: Vec<NeighborEntry> = rows
        .into_iter()
        .flatten()
        .map(|(target, weight)| NeighborEntry { target, weight })
        .collect();
    let graph = NeighborGraph::from_entries(4, 3, entries).unwrap();

    // The subtree-level successor map those minimum edges induce.
    let successor = vec![Some(1), Some(2), Some(3), Some(0)];
    let seed = break_symmetry(&successor);
    println!("successor map after symmetry breaking: {seed:?}");
    let designated: Vec<bool> = seed.iter().enumerate().map(|(u, &s)| s == u).collect();
    let mut roots = seed.clone();
    let outcome = pointer_jump(&mut roots, &designated, &Workers::new(2));
    println!(
        "pointer jumping stalls: residual {} of 4 subtrees rootless",
        outcome.residual
    );
    break_cycles(&seed, &designated, &mut roots);
    println!("cycle walk roots everything at the minimum index: {roots:?}");

    // The same story end to end through the forest builder.
    let owner = vec![0u32; 4];
    let mut labels = vec![UNLABELED; 4];
    for i in 0..4 {
        labels[i] = i;
    }
    let ctx = GroupContext {
        graph: &graph,
        owner: &owner,
        group: 0,
        core_members: &[0, 1, 2, 3],
        min_pts: 2,
    };
    let out = parallel_local_mst(&ctx, &mut labels, &Workers::new(2)).unwrap();
    println!(
        "forest builder: labels {labels:?}, {} round(s) hit the cycle breaker",
        out.cycle_rounds
    );
}
