//! Edge records and the concurrent minimum-edge slot.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

/// A directed weighted edge. Depending on phase, `source`/`target` are
/// point indices or subtree labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRecord {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

impl EdgeRecord {
    /// The strict total order `(weight, target, source)` used by every
    /// minimum-edge reduction. Weight ties break toward the smaller
    /// target, then the smaller source, which makes the reductions
    /// schedule-independent.
    pub fn min_key(&self) -> MinKey {
        MinKey {
            weight: self.weight,
            target: self.target,
            source: self.source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinKey {
    pub weight: f64,
    pub target: usize,
    pub source: usize,
}

impl Eq for MinKey {}

impl Ord for MinKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.target.cmp(&other.target))
            .then(self.source.cmp(&other.source))
    }
}

impl PartialOrd for MinKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A minimum-edge slot written concurrently by many offerers.
///
/// The slot stores a caller-chosen `u64` handle for the current best
/// offer (an index into some table of candidate edges that stays frozen
/// while offers are in flight); `resolve` maps a handle back to its
/// ordering key. An offer retries compare-and-swap until the resident
/// handle's key is not larger than its own, so after any interleaving of
/// offers the slot holds the minimum under the `MinKey` total order.
#[derive(Debug)]
pub struct MinSlot {
    best: AtomicU64,
}

pub const EMPTY_SLOT: u64 = u64::MAX;

impl MinSlot {
    pub fn new() -> MinSlot {
        MinSlot {
            best: AtomicU64::new(EMPTY_SLOT),
        }
    }

    pub fn offer<F>(&self, handle: u64, resolve: F)
    where
        F: Fn(u64) -> MinKey,
    {
        debug_assert!(handle != EMPTY_SLOT);
        let key = resolve(handle);
        let mut current = self.best.load(AtomicOrdering::Acquire);
        loop {
            if current != EMPTY_SLOT && resolve(current) <= key {
                return;
            }
            match self.best.compare_exchange_weak(
                current,
                handle,
                AtomicOrdering::AcqRel,
                AtomicOrdering::Acquire,
            ) {
                Ok(_) => return,
                Err(actual) => current = actual,
            }
        }
    }

    /// The winning handle, if any offer arrived since the last reset.
    pub fn load(&self) -> Option<u64> {
        let v = self.best.load(AtomicOrdering::Acquire);
        (v != EMPTY_SLOT).then_some(v)
    }

    pub fn reset(&self) {
        self.best.store(EMPTY_SLOT, AtomicOrdering::Release);
    }
}

impl Default for MinSlot {
    fn default() -> Self {
        MinSlot::new()
    }
}
