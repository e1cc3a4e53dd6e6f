//! Root resolution for one Boruvka round: symmetry breaking over the
//! minimum-edge successor map, synchronous pointer jumping, and the
//! sequential cycle breaker.
//!
//! Successors form a functional graph over the round's subtrees (dense
//! indices here). On an undirected edge set the map is acyclic after
//! mutual pairs are broken, but directed approximate neighbor lists can
//! produce genuine cycles, which pointer jumping alone never resolves;
//! those subtrees keep their flags and are handed to the cycle walk.

use crate::parallel::Workers;

/// Self-root a subtree when it has no outgoing minimum edge, or when it
/// forms a mutual pair with its successor and has the smaller index.
/// Everything else points at its successor.
pub fn break_symmetry(successor: &[Option<usize>]) -> Vec<usize> {
    successor
        .iter()
        .enumerate()
        .map(|(u, &s)| match s {
            None => u,
            Some(v) => {
                if successor[v] == Some(u) && u < v {
                    u
                } else {
                    v
                }
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JumpOutcome {
    /// Subtrees still flagged when the flag sum stopped changing; these
    /// never reached a designated root (cycle members and their tails).
    pub residual: usize,
    /// Sweeps in which at least one pointer moved.
    pub move_sweeps: usize,
}

/// Synchronous pointer jumping: every sweep replaces each pointer with
/// its pointer's pointer, computed wholesale from the previous sweep's
/// state so results do not depend on scheduling. A subtree's flag clears
/// once it points at a designated root; the loop stops when a sweep
/// changes no flag.
pub fn pointer_jump(roots: &mut Vec<usize>, designated: &[bool], workers: &Workers) -> JumpOutcome {
    let n = roots.len();
    let mut flags = vec![true; n];
    let mut next = vec![0usize; n];
    let mut move_sweeps = 0;
    loop {
        let old = &*roots;
        let mut moved = false;
        let mut cleared = 0usize;
        let chunk_stats = workers.run_chunks(n, |range| {
            let mut moved = false;
            let mut clear: Vec<usize> = Vec::new();
            for u in range {
                let v = old[u];
                let vv = old[v];
                if vv != v {
                    moved = true;
                } else if flags[u] && designated[v] {
                    clear.push(u);
                }
            }
            (moved, clear)
        });
        workers.fill(&mut next, |u| {
            let v = old[u];
            let vv = old[v];
            if vv != v {
                vv
            } else {
                v
            }
        });
        for (chunk_moved, clear) in chunk_stats {
            moved |= chunk_moved;
            for u in clear {
                flags[u] = false;
                cleared += 1;
            }
        }
        std::mem::swap(roots, &mut next);
        if moved {
            move_sweeps += 1;
        }
        if cleared == 0 {
            break;
        }
    }
    JumpOutcome {
        residual: flags.iter().filter(|&&f| f).count(),
        move_sweeps,
    }
}

fn flags_after_jump(roots: &[usize], designated: &[bool]) -> Vec<bool> {
    roots.iter().map(|&r| !designated[r]).collect()
}

/// Resolves every subtree that pointer jumping left rootless: walk the
/// post-symmetry successor map until a node repeats, designate the
/// minimum-index member of the discovered cycle as root, and assign it
/// to everything on the walk. Walks joining already-resolved ground
/// adopt its root. Runs on one coordinator.
pub fn break_cycles(seed: &[usize], designated: &[bool], roots: &mut [usize]) {
    let n = seed.len();
    let flagged = flags_after_jump(roots, designated);
    // usize::MAX = unresolved.
    let mut resolved = vec![usize::MAX; n];
    let mut walk: Vec<usize> = Vec::new();
    // visit_round[u] == round marks membership in the current walk.
    let mut visit_round = vec![0usize; n];
    let mut round = 0usize;
    for start in 0..n {
        if !flagged[start] || resolved[start] != usize::MAX {
            continue;
        }
        round += 1;
        walk.clear();
        let mut cur = start;
        let root = loop {
            if !flagged[cur] {
                // Reached ground that already has a proper root.
                break roots[cur];
            }
            if resolved[cur] != usize::MAX {
                break resolved[cur];
            }
            if visit_round[cur] == round {
                // Found the cycle entry point on this walk.
                let entry = walk.iter().position(|&x| x == cur).unwrap();
                break *walk[entry..].iter().min().unwrap();
            }
            visit_round[cur] = round;
            walk.push(cur);
            cur = seed[cur];
        };
        for &u in &walk {
            resolved[u] = root;
        }
    }
    for u in 0..n {
        if resolved[u] != usize::MAX {
            roots[u] = resolved[u];
        }
    }
}

/// Full root resolution for one round; returns the final root map plus
/// the jump outcome observed before cycle breaking.
pub fn resolve_roots(successor: &[Option<usize>], workers: &Workers) -> (Vec<usize>, JumpOutcome) {
    let seed = break_symmetry(successor);
    let designated: Vec<bool> = seed.iter().enumerate().map(|(u, &s)| s == u).collect();
    let mut roots = seed.clone();
    let outcome = pointer_jump(&mut roots, &designated, workers);
    if outcome.residual > 0 {
        break_cycles(&seed, &designated, &mut roots);
    }
    (roots, outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize) -> Workers {
        Workers::new(n)
    }

    #[test]
    fn mutual_pair_smaller_index_wins() {
        // 2 -> 7 and 7 -> 2 as a mutual pair within 8 subtrees.
        let mut successor: Vec<Option<usize>> = (0..8).map(|_| None).collect();
        successor[2] = Some(7);
        successor[7] = Some(2);
        let (roots, outcome) = resolve_roots(&successor, &w(1));
        assert_eq!(roots[2], 2);
        assert_eq!(roots[7], 2);
        assert_eq!(outcome.residual, 0);
    }

    #[test]
    fn isolated_subtree_is_its_own_root() {
        let successor = vec![None, None, None];
        let seed = break_symmetry(&successor);
        assert_eq!(seed, vec![0, 1, 2]);
    }

    #[test]
    fn chain_resolves_to_terminal() {
        // 0 -> 1 -> 2, 2 isolated: everything roots at 2.
        let successor = vec![Some(1), Some(2), None];
        let (roots, outcome) = resolve_roots(&successor, &w(1));
        assert_eq!(roots, vec![2, 2, 2]);
        assert_eq!(outcome.residual, 0);
    }

    #[test]
    fn self_rooted_map_converges_immediately() {
        let successor = vec![None; 5];
        let seed = break_symmetry(&successor);
        let designated = vec![true; 5];
        let mut roots = seed;
        let outcome = pointer_jump(&mut roots, &designated, &w(1));
        assert_eq!(outcome.residual, 0);
        assert_eq!(outcome.move_sweeps, 0);
        assert_eq!(roots, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn depth_four_chain_needs_at_most_two_move_sweeps() {
        // 0 -> 1 -> 2 -> 3 -> 4(root).
        let successor = vec![Some(1), Some(2), Some(3), Some(4), None];
        let (roots, outcome) = resolve_roots(&successor, &w(1));
        assert_eq!(roots, vec![4; 5]);
        assert_eq!(outcome.residual, 0);
        assert!(outcome.move_sweeps <= 2, "sweeps {}", outcome.move_sweeps);
    }

    #[test]
    fn four_cycle_leaves_full_residual_then_breaks_to_min_index() {
        // 0 -> 1 -> 2 -> 3 -> 0.
        let successor = vec![Some(1), Some(2), Some(3), Some(0)];
        let seed = break_symmetry(&successor);
        assert_eq!(seed, vec![1, 2, 3, 0]);
        let designated: Vec<bool> = seed.iter().enumerate().map(|(u, &s)| s == u).collect();
        let mut roots = seed.clone();
        let outcome = pointer_jump(&mut roots, &designated, &w(1));
        assert_eq!(outcome.residual, 4);
        break_cycles(&seed, &designated, &mut roots);
        assert_eq!(roots, vec![0, 0, 0, 0]);
    }

    #[test]
    fn two_disjoint_mutual_pairs_yield_two_roots() {
        // 0 <-> 1 and 2 <-> 3: symmetry breaking resolves both pairs.
        let successor = vec![Some(1), Some(0), Some(3), Some(2)];
        let (roots, outcome) = resolve_roots(&successor, &w(1));
        assert_eq!(outcome.residual, 0);
        assert_eq!(roots, vec![0, 0, 2, 2]);
    }

    #[test]
    fn two_disjoint_longer_cycles_reach_the_walk() {
        // Mutual pairs never reach the walk; 3-cycles do: {0,1,2} and
        // {3,4,5} resolve to their minimum members.
        let successor = vec![Some(1), Some(2), Some(0), Some(4), Some(5), Some(3)];
        let (roots, outcome) = resolve_roots(&successor, &w(1));
        assert!(outcome.residual > 0);
        assert_eq!(roots, vec![0, 0, 0, 3, 3, 3]);
    }

    #[test]
    fn tail_into_cycle_adopts_cycle_root() {
        // 5 -> 4 -> 1 -> 2 -> 3 -> 1 (rho shape), 0 isolated.
        let successor = vec![None, Some(2), Some(3), Some(1), Some(1), Some(4)];
        let (roots, _) = resolve_roots(&successor, &w(1));
        assert_eq!(roots, vec![0, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn worker_count_does_not_change_resolution() {
        use crate::datasets::SplitMix64;
        let mut rng = SplitMix64::new(555);
        for _ in 0..30 {
            let n = 2 + rng.next_usize_below(60);
            let successor: Vec<Option<usize>> = (0..n)
                .map(|_| {
                    if rng.next_f64() < 0.2 {
                        None
                    } else {
                        Some(rng.next_usize_below(n))
                    }
                })
                .collect();
            let successor: Vec<Option<usize>> = successor
                .iter()
                .enumerate()
                .map(|(u, &s)| if s == Some(u) { None } else { s })
                .collect();
            let (roots1, o1) = resolve_roots(&successor, &w(1));
            let (roots8, o8) = resolve_roots(&successor, &w(8));
            assert_eq!(roots1, roots8);
            assert_eq!(o1, o8);
            // Every chain is self-rooted after resolution.
            for u in 0..n {
                assert_eq!(roots1[roots1[u]], roots1[u]);
            }
        }
    }
}
