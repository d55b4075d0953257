//! Execution-mode selection for the search and verification loops.
//!
//! Heavy loops (representative searches, character sums, window checks)
//! run data-parallel under rayon when the `parallel` feature is enabled,
//! and sequentially otherwise. Parallel searches use first-found-in-order
//! semantics, so both modes return identical results.

/// How a search or verification loop should execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Rayon data-parallelism. Falls back to sequential when the crate
    /// is built without the `parallel` feature.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

impl ExecMode {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && matches!(self, ExecMode::Parallel)
    }
}

/// First index in `0..limit` accepted by `pred`, or `None`.
///
/// The parallel path uses first-found-in-order semantics, so the result
/// is the same index the sequential scan would return.
pub fn find_first_index<F>(limit: u64, mode: ExecMode, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..limit).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = mode;
    (0..limit).find(|&i| pred(i))
}

/// Whether `pred` holds on every index in `0..limit`.
pub fn forall_indices<F>(limit: u64, mode: ExecMode, pred: F) -> bool
where
    F: Fn(u64) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..limit).into_par_iter().all(|i| pred(i));
    }
    let _ = mode;
    (0..limit).all(pred)
}

/// Decodes `index` into mixed-radix digits for the given `radices`
/// (most significant first). Used to map a flat search index onto a
/// tuple of per-coordinate choices.
pub fn decode_mixed_radix(mut index: u64, radices: &[u64]) -> Vec<u64> {
    let mut digits = vec![0; radices.len()];
    for (slot, &r) in digits.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    digits
}

/// Product of the radices saturating at `u64::MAX`.
pub fn space_size(radices: &[u64]) -> u64 {
    radices
        .iter()
        .try_fold(1u64, |acc, &r| acc.checked_mul(r))
        .unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_matches_sequential() {
        let pred = |i: u64| i % 7 == 3;
        assert_eq!(find_first_index(100, ExecMode::Sequential, pred), Some(3));
        assert_eq!(find_first_index(100, ExecMode::Parallel, pred), Some(3));
        assert_eq!(find_first_index(3, ExecMode::Parallel, pred), None);
    }

    #[test]
    fn mixed_radix_round_trip() {
        let radices = [3, 4, 5];
        for idx in 0..60 {
            let d = decode_mixed_radix(idx, &radices);
            let back = d[0] * 20 + d[1] * 5 + d[2];
            assert_eq!(back, idx);
        }
        assert_eq!(space_size(&radices), 60);
    }
}
