//! Contiguous-range work splitting for the verification engines.
//!
//! Every parallel computation in this crate shards a `0..total` index space
//! into contiguous ranges, runs one closure per range on its own thread, and
//! merges results by an associative, commutative operation (entry-wise
//! addition or bit-set union). Results are therefore independent of the
//! worker count by construction.

use std::ops::Range;

/// Split `0..total` into at most `workers` contiguous, non-empty ranges.
pub(crate) fn split_ranges(total: u64, workers: usize) -> Vec<Range<u64>> {
    let workers = workers.max(1) as u64;
    let shards = workers.min(total.max(1));
    let base = total / shards;
    let extra = total % shards;
    let mut out = Vec::with_capacity(shards as usize);
    let mut lo = 0u64;
    for i in 0..shards {
        let len = base + u64::from(i < extra);
        if len == 0 {
            continue;
        }
        out.push(lo..lo + len);
        lo += len;
    }
    out
}

/// Run `work` over `0..total` split across `workers` scoped threads and
/// return the per-shard results in shard order.
pub(crate) fn map_ranges<T, F>(total: u64, workers: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let ranges = split_ranges(total, workers);
    if ranges.len() <= 1 {
        return ranges.into_iter().map(work).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| work(r)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}
