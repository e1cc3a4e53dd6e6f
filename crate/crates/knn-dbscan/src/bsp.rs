//! In-process bulk-synchronous transport between logical ranks.
//!
//! Ranks compute a superstep (sequentially or on concurrent workers),
//! filling per-destination outgoing queues; the exchange then moves
//! every queue into its destination's incoming box, ordered by source
//! rank. All sends of a phase complete before any receive of the next
//! phase is processed, so results are identical for either execution
//! mode.

/// How rank supersteps execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankExecution {
    Sequential,
    Concurrent,
}

/// Per-rank message queues for one exchange phase.
#[derive(Debug)]
pub struct RankMailbox<M> {
    outgoing: Vec<Vec<M>>,
    incoming: Vec<M>,
}

impl<M> RankMailbox<M> {
    pub fn new(p: usize) -> RankMailbox<M> {
        RankMailbox {
            outgoing: (0..p).map(|_| Vec::new()).collect(),
            incoming: Vec::new(),
        }
    }

    pub fn send(&mut self, dst: usize, msg: M) {
        self.outgoing[dst].push(msg);
    }

    /// Messages delivered by the last exchange, ordered by source rank
    /// and, within one source, by send order.
    pub fn incoming(&self) -> &[M] {
        &self.incoming
    }

    pub fn take_incoming(&mut self) -> Vec<M> {
        std::mem::take(&mut self.incoming)
    }
}

/// All-to-all phase fence. Returns the number of messages that crossed
/// rank boundaries (self-deliveries are free locally and not counted).
pub fn exchange<M>(mailboxes: &mut [RankMailbox<M>]) -> usize {
    let p = mailboxes.len();
    let mut crossed = 0;
    let mut deliveries: Vec<Vec<M>> = (0..p).map(|_| Vec::new()).collect();
    for (src, mailbox) in mailboxes.iter_mut().enumerate() {
        for (dst, queue) in mailbox.outgoing.iter_mut().enumerate() {
            let msgs = std::mem::take(queue);
            if src != dst {
                crossed += msgs.len();
            }
            deliveries[dst].extend(msgs);
        }
    }
    for (mailbox, inbox) in mailboxes.iter_mut().zip(deliveries) {
        mailbox.incoming = inbox;
    }
    crossed
}

/// All-gather: every rank contributes a vector; every rank receives the
/// rank-ordered concatenation.
pub fn gather_all<M: Clone>(contributions: Vec<Vec<M>>) -> (Vec<M>, usize) {
    let p = contributions.len();
    let total: usize = contributions.iter().map(Vec::len).sum();
    let gathered: Vec<M> = contributions.into_iter().flatten().collect();
    // Each record travels to the p - 1 other ranks.
    (gathered, total * p.saturating_sub(1))
}

/// Runs one superstep over every rank state, returning per-rank results
/// in rank order.
pub fn run_ranks<S, R, F>(states: &mut [S], exec: RankExecution, f: F) -> Vec<R>
where
    S: Send,
    R: Send,
    F: Fn(usize, &mut S) -> R + Sync,
{
    match exec {
        RankExecution::Sequential => states
            .iter_mut()
            .enumerate()
            .map(|(rank, state)| f(rank, state))
            .collect(),
        RankExecution::Concurrent => std::thread::scope(|scope| {
            let handles: Vec<_> = states
                .iter_mut()
                .enumerate()
                .map(|(rank, state)| {
                    let f = &f;
                    scope.spawn(move || f(rank, state))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        }),
    }
}

/// Superstep over rank states zipped with their phase mailboxes.
pub fn run_rank_pairs<S, T, R, F>(
    states: &mut [S],
    mailboxes: &mut [T],
    exec: RankExecution,
    f: F,
) -> Vec<R>
where
    S: Send,
    T: Send,
    R: Send,
    F: Fn(usize, &mut S, &mut T) -> R + Sync,
{
    debug_assert_eq!(states.len(), mailboxes.len());
    match exec {
        RankExecution::Sequential => states
            .iter_mut()
            .zip(mailboxes.iter_mut())
            .enumerate()
            .map(|(rank, (state, mailbox))| f(rank, state, mailbox))
            .collect(),
        RankExecution::Concurrent => std::thread::scope(|scope| {
            let handles: Vec<_> = states
                .iter_mut()
                .zip(mailboxes.iter_mut())
                .enumerate()
                .map(|(rank, (state, mailbox))| {
                    let f = &f;
                    scope.spawn(move || f(rank, state, mailbox))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exchange_orders_by_source_rank() {
        let mut boxes: Vec<RankMailbox<(usize, u32)>> =
            (0..3).map(|_| RankMailbox::new(3)).collect();
        boxes[2].send(0, (2, 20));
        boxes[0].send(0, (0, 1));
        boxes[1].send(0, (1, 10));
        boxes[1].send(0, (1, 11));
        let crossed = exchange(&mut boxes);
        assert_eq!(boxes[0].incoming(), &[(0, 1), (1, 10), (1, 11), (2, 20)]);
        assert_eq!(crossed, 3);
    }

    #[test]
    fn sequential_and_concurrent_supersteps_agree() {
        let mut a: Vec<u64> = (0..6).collect();
        let mut b = a.clone();
        let ra = run_ranks(&mut a, RankExecution::Sequential, |rank, s| {
            *s += rank as u64;
            *s * 2
        });
        let rb = run_ranks(&mut b, RankExecution::Concurrent, |rank, s| {
            *s += rank as u64;
            *s * 2
        });
        assert_eq!(a, b);
        assert_eq!(ra, rb);
    }

    #[test]
    fn gather_all_replicates_in_rank_order() {
        let (gathered, msgs) = gather_all(vec![vec![1], vec![], vec![2, 3]]);
        assert_eq!(gathered, vec![1, 2, 3]);
        assert_eq!(msgs, 6);
    }
}
