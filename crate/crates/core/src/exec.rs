//! Execution strategy for the data-parallel loops (term sums, enumerations).
//!
//! Every reduction used here is exact and associative, so the result never
//! depends on the strategy or on how work is partitioned.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}


impl Exec {
    /// Map every item and fold the results with `reduce`, starting from `identity()`.
    pub fn map_reduce<T, A, M, R, I>(self, items: &[T], identity: I, map: M, reduce: R) -> A
    where
        T: Sync,
        A: Send,
        I: Fn() -> A + Sync + Send,
        M: Fn(&T) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(map).fold(identity(), reduce),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(map).reduce(identity, reduce),
        }
    }

    /// Split `range` into at most `chunks` contiguous pieces, fold each with
    /// worker-local state, and merge the partial results.
    pub fn fold_chunks<A, F, R, I>(self, range: Range<u64>, chunks: u64, identity: I, fold: F, reduce: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, Range<u64>) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        let len = range.end.saturating_sub(range.start);
        let chunks = chunks.clamp(1, len.max(1));
        let step = len.div_ceil(chunks).max(1);
        let piece = |c: u64| {
            let lo = range.start + c * step;
            lo..(lo + step).min(range.end)
        };
        let pieces = len.div_ceil(step);
        match self {
            Exec::Sequential => (0..pieces).map(|c| fold(identity(), piece(c))).fold(identity(), &reduce),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                (0..pieces).into_par_iter().map(|c| fold(identity(), piece(c))).reduce(&identity, &reduce)
            }
        }
    }
}
