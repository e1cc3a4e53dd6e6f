//! Distributed Boruvka rounds over cut edges, connecting per-group
//! subtrees across partition boundaries.
//!
//! Groups are logical ranks exchanging messages through the
//! bulk-synchronous mailbox fabric. Each round folds active cut edges
//! into per-subtree local minima, routes each minimum to the subtree's
//! owner (the owner of its representative index), folds again into
//! global minima, resolves roots over the global successor map, and
//! rewrites subtree labels and edge endpoints. Edges joining subtrees
//! with equal roots become inactive and stay inactive. Rounds stop when
//! the global root count stops decreasing.

use std::time::Instant;

use crate::bsp::{exchange, gather_all, run_rank_pairs, run_ranks, RankExecution, RankMailbox};
use crate::edge::{EdgeRecord, MinKey, MinSlot};
use crate::error::{Error, Result};
use crate::local_mst::UNLABELED;
use crate::rootfind::{break_cycles, break_symmetry};

/// A cut edge after relabeling: endpoints are subtree labels. A `None`
/// target marks an inactive edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutEdge {
    pub source: usize,
    pub target: Option<usize>,
    pub weight: f64,
}

/// One rank's share of the cut phase.
#[derive(Debug)]
pub struct RankState {
    pub rank: u32,
    /// Input subtree roster from the local phase, ascending.
    pub subtrees: Vec<usize>,
    /// Current root per input subtree (parallel to `subtrees`).
    pub roots: Vec<usize>,
    pub edges: Vec<CutEdge>,
    /// Active roots this rank observes, ascending.
    pub t_hat: Vec<usize>,
    /// Active roots this rank owns, ascending.
    pub t_hat_l: Vec<usize>,
}

impl RankState {
    pub fn new(rank: u32, subtrees: Vec<usize>, edges: Vec<CutEdge>, owner: &[u32]) -> RankState {
        debug_assert!(subtrees.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(subtrees.iter().all(|&s| owner[s] == rank));
        let roots = subtrees.clone();
        let t_hat = subtrees.clone();
        let t_hat_l = subtrees.clone();
        RankState {
            rank,
            subtrees,
            roots,
            edges,
            t_hat,
            t_hat_l,
        }
    }

    /// Final root of one of this rank's input subtrees.
    pub fn root_of(&self, subtree: usize) -> usize {
        let idx = self
            .subtrees
            .binary_search(&subtree)
            .expect("label is not one of this rank's subtrees");
        self.roots[idx]
    }

    /// Rewrites subtree roots, rosters, and edge endpoints against a
    /// full old-root -> new-root table; returns the number of edges
    /// still active.
    pub fn apply_root_update(&mut self, table: &RootTable, owner: &[u32]) -> Result<usize> {
        for root in self.roots.iter_mut() {
            *root = table.lookup(*root)?;
        }
        let mut t_hat = self.roots.clone();
        t_hat.sort_unstable();
        t_hat.dedup();
        self.t_hat_l = t_hat
            .iter()
            .copied()
            .filter(|&r| owner[r] == self.rank)
            .collect();
        self.t_hat = t_hat;
        let mut active = 0;
        for e in self.edges.iter_mut() {
            let Some(target) = e.target else { continue };
            let src = table.lookup(e.source)?;
            let dst = table.lookup(target)?;
            e.source = src;
            e.target = if src == dst { None } else { Some(dst) };
            active += usize::from(e.target.is_some());
        }
        Ok(active)
    }
}

/// A root-relabeling table gathered from all ranks, keyed by old root.
#[derive(Debug, Clone)]
pub struct RootTable {
    rows: Vec<(usize, usize)>,
}

impl RootTable {
    pub fn from_rows(mut rows: Vec<(usize, usize)>) -> RootTable {
        rows.sort_unstable();
        RootTable { rows }
    }

    pub fn lookup(&self, old_root: usize) -> Result<usize> {
        self.rows
            .binary_search_by_key(&old_root, |&(k, _)| k)
            .map(|idx| self.rows[idx].1)
            .map_err(|_| Error::Protocol(format!("no root-table row for subtree {old_root}")))
    }

    /// Number of distinct final roots (fixed points of the table).
    pub fn root_count(&self) -> usize {
        self.rows.iter().filter(|&&(k, v)| k == v).count()
    }
}

/// A label request: (asking rank, edge index there, target point).
type LabelQuery = (u32, usize, usize);
/// A label answer: (edge index, subtree label if the point was core).
type LabelReply = (usize, Option<usize>);

/// Replaces point-level cut edges with subtree-level ones: sources take
/// their local subtree label, targets are resolved by one query/reply
/// exchange with the target's owner. Edges whose remote target was never
/// core come back with a `None` label and start out inactive.
pub fn relabel_cut_edges(
    raw: &[Vec<EdgeRecord>],
    labels: &[usize],
    owner: &[u32],
    exec: RankExecution,
) -> Result<(Vec<Vec<CutEdge>>, usize)> {
    let p = raw.len();
    let mut queries: Vec<RankMailbox<LabelQuery>> =
        (0..p).map(|_| RankMailbox::new(p)).collect();
    let mut raw_and_query: Vec<(&Vec<EdgeRecord>, &mut RankMailbox<LabelQuery>)> =
        raw.iter().zip(queries.iter_mut()).collect();
    let per_rank: Vec<Result<()>> = run_ranks(&mut raw_and_query, exec, |rank, (edges, mailbox)| {
        for (idx, e) in edges.iter().enumerate() {
            if e.target >= owner.len() {
                return Err(Error::Protocol(format!(
                    "cut edge targets point {} beyond the point set",
                    e.target
                )));
            }
            mailbox.send(owner[e.target] as usize, (rank as u32, idx, e.target));
        }
        Ok(())
    });
    per_rank.into_iter().collect::<Result<Vec<_>>>()?;
    let mut messages = exchange(&mut queries);

    let mut replies: Vec<RankMailbox<LabelReply>> =
        (0..p).map(|_| RankMailbox::new(p)).collect();
    let mut pair: Vec<(&mut RankMailbox<LabelQuery>, &mut RankMailbox<LabelReply>)> =
        queries.iter_mut().zip(replies.iter_mut()).collect();
    run_ranks(&mut pair, exec, |_rank, (inbox, outbox)| {
        for &(asker, edge_idx, point) in inbox.incoming() {
            let label = labels[point];
            let label = (label != UNLABELED).then_some(label);
            outbox.send(asker as usize, (edge_idx, label));
        }
    });
    messages += exchange(&mut replies);

    let mut relabeled: Vec<Vec<CutEdge>> = Vec::with_capacity(p);
    for (rank, edges) in raw.iter().enumerate() {
        let mut out: Vec<CutEdge> = edges
            .iter()
            .map(|e| {
                debug_assert!(labels[e.source] != UNLABELED);
                CutEdge {
                    source: labels[e.source],
                    target: None,
                    weight: e.weight,
                }
            })
            .collect();
        for &(edge_idx, label) in replies[rank].incoming() {
            out[edge_idx].target = label;
        }
        relabeled.push(out);
    }
    Ok((relabeled, messages))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTrace {
    /// 0 is the relabel exchange; Boruvka rounds count from 1.
    pub round: usize,
    pub active_cut_edges: usize,
    pub messages: usize,
    pub n_root: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CutTimings {
    pub min_edges_seconds: f64,
    pub pointer_jumping_seconds: f64,
    pub update_cut_seconds: f64,
}

#[derive(Debug)]
pub struct CutOutcome {
    pub traces: Vec<RoundTrace>,
    pub rounds: usize,
    pub timings: CutTimings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FindRootsStats {
    pub sweeps: usize,
    pub residual: usize,
    pub messages: usize,
}

/// Scratch a rank keeps while roots are being resolved. Every rank
/// rebuilds the same dense tables from the gathered rows, so the
/// replicated computations agree without extra reduction phases.
struct RootScratch {
    /// Sorted root values; dense indices refer to positions here.
    index: Vec<usize>,
    seed: Vec<usize>,
    designated: Vec<bool>,
    current: Vec<usize>,
    flags: Vec<bool>,
    /// This rank's owned rows as dense indices, ascending.
    owned: Vec<usize>,
}

/// Per-rank rows mapping each owned subtree to its resolved root.
pub type ResolvedRoots = Vec<Vec<(usize, usize)>>;

/// Resolves the root of every active subtree from per-rank seed
/// successor maps (subtree -> minimum-edge target). Same semantics as
/// the local round: symmetry breaking, synchronous pointer jumping with
/// one full-table gather per sweep, then min-index cycle breaking.
pub fn distributed_find_roots(
    seeds: &[Vec<(usize, Option<usize>)>],
    exec: RankExecution,
) -> Result<(ResolvedRoots, FindRootsStats)> {
    let p = seeds.len();
    let (seed_rows, mut messages) = gather_all(seeds.to_vec());
    if seed_rows.is_empty() {
        return Ok((
            vec![Vec::new(); p],
            FindRootsStats {
                sweeps: 0,
                residual: 0,
                messages,
            },
        ));
    }

    let mut scratches: Vec<RootScratch> = (0..p)
        .map(|rank| build_scratch(&seed_rows, &seeds[rank]))
        .collect::<Result<Vec<_>>>()?;

    let n_roots = scratches[0].index.len();
    let mut sweeps = 0;
    loop {
        if sweeps > n_roots + 2 {
            return Err(Error::Internal(
                "root resolution failed to converge".into(),
            ));
        }
        // Gather (root, current, flag) rows from every rank.
        let contributions: Vec<Vec<(usize, usize, bool)>> = scratches
            .iter()
            .map(|s| {
                s.owned
                    .iter()
                    .map(|&d| (s.index[d], s.index[s.current[d]], s.flags[d]))
                    .collect()
            })
            .collect();
        let (rows, gathered) = gather_all(contributions);
        messages += gathered;
        sweeps += 1;

        let cleared_counts = run_ranks(&mut scratches, exec, |_rank, scratch| {
            sweep_from_rows(scratch, &rows)
        });
        let cleared = cleared_counts[0];
        debug_assert!(cleared_counts.iter().all(|&c| c == cleared));
        if cleared == 0 {
            break;
        }
    }

    let residual = scratches[0].flags.iter().filter(|&&f| f).count();
    if residual > 0 {
        run_ranks(&mut scratches, exec, |_rank, scratch| {
            let seed = scratch.seed.clone();
            break_cycles(&seed, &scratch.designated, &mut scratch.current);
        });
    }

    let resolved: ResolvedRoots = scratches
        .iter()
        .map(|s| {
            s.owned
                .iter()
                .map(|&d| (s.index[d], s.index[s.current[d]]))
                .collect()
        })
        .collect();
    Ok((
        resolved,
        FindRootsStats {
            sweeps,
            residual,
            messages,
        },
    ))
}

fn build_scratch(
    all_rows: &[(usize, Option<usize>)],
    owned_rows: &[(usize, Option<usize>)],
) -> Result<RootScratch> {
    let mut index: Vec<usize> = all_rows.iter().map(|&(r, _)| r).collect();
    index.sort_unstable();
    index.dedup();
    if index.len() != all_rows.len() {
        return Err(Error::Protocol(
            "duplicate subtree ownership in gathered root rows".into(),
        ));
    }
    let dense = |root: usize| -> Result<usize> {
        index
            .binary_search(&root)
            .map_err(|_| Error::Protocol(format!("successor targets unknown subtree {root}")))
    };
    let mut successor: Vec<Option<usize>> = vec![None; index.len()];
    for &(root, succ) in all_rows {
        let d = dense(root)?;
        successor[d] = match succ {
            Some(s) => Some(dense(s)?),
            None => None,
        };
    }
    let seed = break_symmetry(&successor);
    let designated: Vec<bool> = seed.iter().enumerate().map(|(u, &s)| s == u).collect();
    let current = seed.clone();
    let flags = vec![true; index.len()];
    let owned = owned_rows
        .iter()
        .map(|&(r, _)| dense(r))
        .collect::<Result<Vec<_>>>()?;
    Ok(RootScratch {
        index,
        seed,
        designated,
        current,
        flags,
        owned,
    })
}

/// One synchronous sweep computed from gathered rows; returns how many
/// flags cleared (identical on every rank).
fn sweep_from_rows(scratch: &mut RootScratch, rows: &[(usize, usize, bool)]) -> usize {
    let mut current = vec![0usize; scratch.index.len()];
    let mut flags = vec![false; scratch.index.len()];
    for &(root, cur, flag) in rows {
        let d = scratch.index.binary_search(&root).unwrap();
        current[d] = scratch.index.binary_search(&cur).unwrap();
        flags[d] = flag;
    }
    let mut cleared = 0;
    let mut next = current.clone();
    for u in 0..current.len() {
        let v = current[u];
        let vv = current[v];
        if vv != v {
            next[u] = vv;
        } else if flags[u] && scratch.designated[v] {
            flags[u] = false;
            cleared += 1;
        }
    }
    scratch.current = next;
    scratch.flags = flags;
    cleared
}

/// Runs the whole cut phase over prepared rank states; on return each
/// rank's `roots` give the final root of every input subtree. The
/// round-0 trace records the relabel exchange that produced the edges
/// (`relabel_messages`).
pub fn distributed_cut_mst(
    states: &mut [RankState],
    owner: &[u32],
    exec: RankExecution,
    relabel_messages: usize,
) -> Result<CutOutcome> {
    let p = states.len();
    let mut traces: Vec<RoundTrace> = Vec::new();
    let mut timings = CutTimings::default();
    let mut n_root: usize = states.iter().map(|s| s.t_hat_l.len()).sum();
    let initial_active: usize = states
        .iter()
        .map(|s| s.edges.iter().filter(|e| e.target.is_some()).count())
        .sum();
    traces.push(RoundTrace {
        round: 0,
        active_cut_edges: initial_active,
        messages: relabel_messages,
        n_root,
    });

    let round_bound = n_root + 2;
    let mut round = 0;
    loop {
        round += 1;
        if round > round_bound {
            return Err(Error::Internal("cut phase failed to converge".into()));
        }
        let mut round_messages = 0;

        // Local minimum cut edges, routed to each subtree's owner.
        let started = Instant::now();
        let mut mail: Vec<RankMailbox<(usize, usize, f64)>> =
            (0..p).map(|_| RankMailbox::new(p)).collect();
        let active_counts = run_rank_pairs(states, &mut mail, exec, |_rank, state, mailbox| {
            let slots: Vec<MinSlot> = (0..state.t_hat.len()).map(|_| MinSlot::new()).collect();
            let edges = &state.edges;
            let resolve = |h: u64| -> MinKey {
                let e = &edges[h as usize];
                MinKey {
                    weight: e.weight,
                    target: e.target.unwrap(),
                    source: e.source,
                }
            };
            let mut active = 0;
            for (idx, e) in edges.iter().enumerate() {
                if e.target.is_none() {
                    continue;
                }
                active += 1;
                let slot = state.t_hat.binary_search(&e.source).unwrap();
                slots[slot].offer(idx as u64, resolve);
            }
            for (slot, &subtree) in slots.iter().zip(&state.t_hat) {
                if let Some(h) = slot.load() {
                    let e = &edges[h as usize];
                    mailbox.send(
                        owner[subtree] as usize,
                        (subtree, e.target.unwrap(), e.weight),
                    );
                }
            }
            active
        });
        let active_cut_edges: usize = active_counts.iter().sum();
        round_messages += exchange(&mut mail);

        // Global minimum per owned subtree.
        let seeds: Vec<Vec<(usize, Option<usize>)>> =
            run_rank_pairs(states, &mut mail, exec, |_rank, state, mailbox| {
                let slots: Vec<MinSlot> = (0..state.t_hat_l.len()).map(|_| MinSlot::new()).collect();
                let received = mailbox.take_incoming();
                let resolve = |h: u64| -> MinKey {
                    let &(subtree, target, weight) = &received[h as usize];
                    MinKey {
                        weight,
                        target,
                        source: subtree,
                    }
                };
                for (idx, &(subtree, _, _)) in received.iter().enumerate() {
                    let slot = state
                        .t_hat_l
                        .binary_search(&subtree)
                        .expect("minimum edge routed to a rank that does not own its subtree");
                    slots[slot].offer(idx as u64, resolve);
                }
                slots
                    .iter()
                    .zip(&state.t_hat_l)
                    .map(|(slot, &subtree)| {
                        (subtree, slot.load().map(|h| received[h as usize].1))
                    })
                    .collect()
            });
        timings.min_edges_seconds += started.elapsed().as_secs_f64();

        // Root resolution over the global successor map.
        let started = Instant::now();
        let (resolved, stats) = distributed_find_roots(&seeds, exec)?;
        round_messages += stats.messages;
        timings.pointer_jumping_seconds += started.elapsed().as_secs_f64();

        // Broadcast the root table; rewrite rosters and edges.
        let started = Instant::now();
        let (table_rows, gathered) = gather_all(resolved);
        round_messages += gathered;
        let table = RootTable::from_rows(table_rows);
        let updates = run_ranks(states, exec, |_rank, state| {
            state.apply_root_update(&table, owner)
        });
        for u in updates {
            u?;
        }
        timings.update_cut_seconds += started.elapsed().as_secs_f64();

        let new_n_root = table.root_count();
        traces.push(RoundTrace {
            round,
            active_cut_edges,
            messages: round_messages,
            n_root: new_n_root,
        });
        let progressed = new_n_root < n_root;
        n_root = new_n_root;
        if !progressed {
            break;
        }
    }

    Ok(CutOutcome {
        traces,
        rounds: round,
        timings,
    })
}
