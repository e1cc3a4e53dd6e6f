//! Minimal data-parallel helpers over scoped threads.
//!
//! Work is split into contiguous index chunks, one per worker, and chunk
//! results are returned in chunk order. Because chunks tile the index
//! range in order and every per-index computation is independent of its
//! chunk mates, concatenated results are identical for any worker count.

use std::ops::Range;

/// A fixed worker count; 1 runs everything inline on the caller.
#[derive(Debug, Clone, Copy)]
pub struct Workers(usize);

impl Workers {
    pub fn new(n: usize) -> Workers {
        Workers(n.max(1))
    }

    /// One worker per available hardware thread.
    pub fn available() -> Workers {
        Workers::new(
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        )
    }

    pub fn count(&self) -> usize {
        self.0
    }

    fn chunk_ranges(&self, len: usize) -> Vec<Range<usize>> {
        if len == 0 {
            return Vec::new();
        }
        let workers = self.0.min(len);
        let chunk = len.div_ceil(workers);
        (0..len)
            .step_by(chunk)
            .map(|start| start..(start + chunk).min(len))
            .collect()
    }

    /// Runs `f` over contiguous chunks of `0..len`; results in chunk order.
    pub fn run_chunks<R, F>(&self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(Range<usize>) -> R + Sync,
    {
        let ranges = self.chunk_ranges(len);
        if ranges.len() <= 1 {
            return ranges.into_iter().map(f).collect();
        }
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|range| scope.spawn(|| f(range)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    }

    /// Parallel map of `f(i)` into `out[i]`.
    pub fn fill<T, F>(&self, out: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        let len = out.len();
        let ranges = self.chunk_ranges(len);
        if ranges.len() <= 1 {
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = f(i);
            }
            return;
        }
        std::thread::scope(|scope| {
            let mut rest = out;
            let mut offset = 0;
            for range in ranges {
                let (head, tail) = rest.split_at_mut(range.len());
                rest = tail;
                let start = offset;
                let f = &f;
                scope.spawn(move || {
                    for (k, slot) in head.iter_mut().enumerate() {
                        *slot = f(start + k);
                    }
                });
                offset = range.end;
            }
        });
    }

    /// Splits `data` into contiguous chunks, hands each worker its chunk
    /// plus the chunk's starting index, and returns per-chunk results in
    /// chunk order.
    pub fn zip_chunks_mut<T, R, F>(&self, data: &mut [T], f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(usize, &mut [T]) -> R + Sync,
    {
        let len = data.len();
        let ranges = self.chunk_ranges(len);
        if ranges.len() <= 1 {
            return ranges.into_iter().map(|r| f(r.start, data)).collect();
        }
        std::thread::scope(|scope| {
            let mut handles = Vec::with_capacity(ranges.len());
            let mut rest = data;
            for range in ranges {
                let (head, tail) = rest.split_at_mut(range.len());
                rest = tail;
                let start = range.start;
                let f = &f;
                handles.push(scope.spawn(move || f(start, head)));
            }
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fill_matches_sequential_for_any_worker_count() {
        let expect: Vec<usize> = (0..103).map(|i| i * i).collect();
        for workers in [1, 2, 3, 8, 200] {
            let mut out = vec![0usize; 103];
            Workers::new(workers).fill(&mut out, |i| i * i);
            assert_eq!(out, expect);
        }
    }

    #[test]
    fn chunk_results_concatenate_in_index_order() {
        for workers in [1, 2, 5, 16] {
            let parts = Workers::new(workers).run_chunks(50, |r| r.collect::<Vec<_>>());
            let flat: Vec<usize> = parts.into_iter().flatten().collect();
            assert_eq!(flat, (0..50).collect::<Vec<_>>());
        }
    }

    #[test]
    fn zip_chunks_mut_sees_correct_offsets() {
        let mut data = vec![0usize; 37];
        Workers::new(4).zip_chunks_mut(&mut data, |start, chunk| {
            for (k, v) in chunk.iter_mut().enumerate() {
                *v = start + k;
            }
        });
        assert_eq!(data, (0..37).collect::<Vec<_>>());
    }

    #[test]
    fn empty_input_is_fine() {
        let parts: Vec<()> = Workers::new(4).run_chunks(0, |_| ());
        assert!(parts.is_empty());
    }
}
