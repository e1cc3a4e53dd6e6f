//! The minimum-edge slot written by many threads at once: offers retry
//! compare-and-swap until the resident value is no larger under the
//! (weight, target, source) total order, so the winner is the exact
//! sequential minimum regardless of interleaving.
//!
//! ```bash
//! cargo run --release -p knn-dbscan --example concurrent_min_fold
//! ```

use knn_dbscan::datasets::SplitMix64;
use knn_dbscan::edge::{EdgeRecord, MinKey, MinSlot};

fn main() {
    let mut rng = SplitMix64::new(2);
    let offers: Vec<EdgeRecord> = (0..100_000)
        .map(|_| EdgeRecord {
            weight: (rng.next_usize_below(500) as f64) * 0.01,
            target: rng.next_usize_below(1_000),
            source: rng.next_usize_below(1_000),
        })
        .collect();

    let slot = MinSlot::new();
    let resolve = |h: u64| -> MinKey { offers[h as usize].min_key() };
    std::thread::scope(|scope| {
        for writer in 0..8usize {
            let slot = &slot;
            let offers = &offers;
            scope.spawn(move || {
                let mut idx = writer;
                while idx < offers.len() {
                    slot.offer(idx as u64, resolve);
                    idx += 8;
                }
            });
        }
    });

    let winner = offers[slot.load().unwrap() as usize];
    let expect = offers.iter().map(EdgeRecord::min_key).min().unwrap();
    println!(
        "8 writers, {} offers -> slot holds (w={}, target={}, source={})",
        offers.len(),
        winner.weight,
        winner.target,
        winner.source
    );
    assert_eq!(winner.min_key(), expect);
    println!("matches the sequential fold exactly");
}
