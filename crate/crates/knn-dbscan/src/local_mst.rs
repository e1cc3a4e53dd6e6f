//! Per-group Boruvka forest construction over local core-point edges.
//!
//! Each round scans every core point's neighbor list from its saved
//! position, offering the first edge that leaves the point's current
//! subtree to that subtree's minimum-edge slot; edges into other groups
//! are collected as cut edges, and edges to non-core or same-subtree
//! points advance the scan. Root resolution then contracts the chosen
//! edges, and rounds repeat until the subtree count stops shrinking.
//! Only the first `min_pts` entries per point participate; later entries
//! exist for border detection and statistics.

use crate::edge::{EdgeRecord, MinKey, MinSlot};
use crate::error::Result;
use crate::knng::NeighborGraph;
use crate::parallel::Workers;
use crate::rootfind::resolve_roots;

/// Internal label value for points without a subtree (non-core points,
/// and border points until the border pass runs).
pub const UNLABELED: usize = usize::MAX;

/// One group's view of the clustering problem.
pub struct GroupContext<'a> {
    pub graph: &'a NeighborGraph,
    /// Owner group per point (global).
    pub owner: &'a [u32],
    /// The group this run works for.
    pub group: u32,
    /// This group's core points, ascending.
    pub core_members: &'a [usize],
    /// Scan bound: only the first `min_pts` entries feed the forest.
    pub min_pts: usize,
}

#[derive(Debug)]
pub struct LocalMstOutput {
    /// Every scanned edge whose target lives in another group, in scan
    /// order (ascending source, then list position).
    pub cut_edges: Vec<EdgeRecord>,
    /// Final subtree roots, ascending.
    pub subtree_roots: Vec<usize>,
    /// Boruvka rounds executed, including the final no-progress round.
    pub rounds: usize,
    /// Rounds in which pointer jumping left rootless subtrees.
    pub cycle_rounds: usize,
}

/// What the scan does with one candidate edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeDisposition {
    /// Target owned by another group: record it and advance.
    CutEdge,
    /// Target is a local core point in a different subtree: offer it and
    /// stop scanning for this round.
    Offer,
    /// Local non-core target or same subtree: advance.
    Skip,
}

pub fn edge_disposition(
    source: usize,
    target: usize,
    owner: &[u32],
    group: u32,
    labels: &[usize],
) -> EdgeDisposition {
    if owner[target] != group {
        EdgeDisposition::CutEdge
    } else if labels[target] != UNLABELED && labels[target] != labels[source] {
        EdgeDisposition::Offer
    } else {
        EdgeDisposition::Skip
    }
}

/// Runs the group's forest construction. `labels` must hold `i` for each
/// of the group's core points and may hold anything for points of other
/// groups (they are only read through `owner` checks). On return every
/// core member's label is the root of its component in the group-local
/// core-core subgraph.
pub fn parallel_local_mst(
    ctx: &GroupContext<'_>,
    labels: &mut [usize],
    workers: &Workers,
) -> Result<LocalMstOutput> {
    let members = ctx.core_members;
    let m = ctx.min_pts;
    debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(members.iter().all(|&i| labels[i] == i));

    let mut cut_edges: Vec<EdgeRecord> = Vec::new();
    // Scan position per member; position 0 is the self entry, which the
    // scan skips via the same-subtree rule.
    let mut scan_pos = vec![1usize; members.len()];
    let mut roster: Vec<usize> = members.to_vec();
    let mut rounds = 0;
    let mut cycle_rounds = 0;

    loop {
        rounds += 1;
        let slots: Vec<MinSlot> = (0..roster.len()).map(|_| MinSlot::new()).collect();
        let graph = ctx.graph;
        let resolve = |handle: u64| -> MinKey {
            let i = (handle >> 32) as usize;
            let pos = (handle & 0xffff_ffff) as usize;
            let e = graph.entry(i, pos);
            MinKey {
                weight: e.weight,
                target: e.target,
                source: i,
            }
        };

        // Find minimum edges.
        let labels_ro: &[usize] = labels;
        let roster_ro: &[usize] = &roster;
        let chunk_cuts = workers.zip_chunks_mut(&mut scan_pos, |start, chunk| {
            let mut cuts: Vec<EdgeRecord> = Vec::new();
            for (k, pos) in chunk.iter_mut().enumerate() {
                let i = members[start + k];
                while *pos < m {
                    let e = graph.entry(i, *pos);
                    match edge_disposition(i, e.target, ctx.owner, ctx.group, labels_ro) {
                        EdgeDisposition::CutEdge => {
                            cuts.push(EdgeRecord {
                                source: i,
                                target: e.target,
                                weight: e.weight,
                            });
                            *pos += 1;
                        }
                        EdgeDisposition::Offer => {
                            let slot = roster_ro.binary_search(&labels_ro[i]).unwrap();
                            let handle = ((i as u64) << 32) | *pos as u64;
                            slots[slot].offer(handle, resolve);
                            break;
                        }
                        EdgeDisposition::Skip => {
                            *pos += 1;
                        }
                    }
                }
            }
            cuts
        });
        for cuts in chunk_cuts {
            cut_edges.extend(cuts);
        }

        // Subtree-level successor map from the winning edges.
        let successor: Vec<Option<usize>> = slots
            .iter()
            .map(|slot| {
                slot.load().map(|handle| {
                    let i = (handle >> 32) as usize;
                    let pos = (handle & 0xffff_ffff) as usize;
                    let target_root = labels[graph.entry(i, pos).target];
                    roster.binary_search(&target_root).unwrap()
                })
            })
            .collect();

        let (roots, outcome) = resolve_roots(&successor, workers);
        if outcome.residual > 0 {
            cycle_rounds += 1;
        }

        // Update member labels to their subtree's new root.
        let mut new_labels = vec![0usize; members.len()];
        workers.fill(&mut new_labels, |k| {
            let dense = roster.binary_search(&labels[members[k]]).unwrap();
            roster[roots[dense]]
        });
        for (k, &i) in members.iter().enumerate() {
            labels[i] = new_labels[k];
        }

        // New roster: image of the old roster under this round's roots.
        let mut new_roster: Vec<usize> = roots.iter().map(|&r| roster[r]).collect();
        new_roster.sort_unstable();
        new_roster.dedup();
        let progressed = new_roster.len() < roster.len();
        roster = new_roster;
        if !progressed {
            break;
        }
    }

    Ok(LocalMstOutput {
        cut_edges,
        subtree_roots: roster,
        rounds,
        cycle_rounds,
    })
}
