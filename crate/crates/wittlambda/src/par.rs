//! Data-parallel driving of index-space sweeps.
//!
//! Every enumeration in this crate walks an integer index space `0..n` and
//! either collects hits, sums a statistic, or looks for the first
//! counterexample. With the `parallel` feature (default) the sweeps run on
//! rayon; without it they fall back to the sequential loops below. The
//! `*_seq` variants are always compiled so benchmarks can compare both
//! paths in one build.
//!
//! Output order is part of the contract: `filter_map_indexed` preserves
//! index order and `first_hit` returns the hit with the smallest index, so
//! results are identical with and without `parallel`.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many indices the parallel build still runs sequentially;
/// splitting overhead dominates for tiny sweeps.
const PAR_THRESHOLD: u64 = 2048;

pub fn filter_map_indexed_seq<T>(n: u64, f: impl Fn(u64) -> Option<T>) -> Vec<T> {
    (0..n).filter_map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn filter_map_indexed<T: Send>(n: u64, f: impl Fn(u64) -> Option<T> + Sync + Send) -> Vec<T> {
    if n < PAR_THRESHOLD {
        filter_map_indexed_seq(n, f)
    } else {
        (0..n).into_par_iter().filter_map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn filter_map_indexed<T: Send>(n: u64, f: impl Fn(u64) -> Option<T> + Sync + Send) -> Vec<T> {
    filter_map_indexed_seq(n, f)
}

pub fn sum_indexed_seq(n: u64, f: impl Fn(u64) -> u64) -> u64 {
    (0..n).map(f).sum()
}

#[cfg(feature = "parallel")]
pub fn sum_indexed(n: u64, f: impl Fn(u64) -> u64 + Sync + Send) -> u64 {
    if n < PAR_THRESHOLD {
        sum_indexed_seq(n, f)
    } else {
        (0..n).into_par_iter().map(f).sum()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn sum_indexed(n: u64, f: impl Fn(u64) -> u64 + Sync + Send) -> u64 {
    sum_indexed_seq(n, f)
}

/// First `Some` over the index space, by smallest index.
pub fn first_hit_seq<T>(n: u64, f: impl Fn(u64) -> Option<T>) -> Option<T> {
    (0..n).find_map(f)
}

#[cfg(feature = "parallel")]
pub fn first_hit<T: Send>(n: u64, f: impl Fn(u64) -> Option<T> + Sync + Send) -> Option<T> {
    if n < PAR_THRESHOLD {
        first_hit_seq(n, f)
    } else {
        (0..n).into_par_iter().find_map_first(f)
    }
}

#[cfg(not(feature = "parallel"))]
pub fn first_hit<T: Send>(n: u64, f: impl Fn(u64) -> Option<T> + Sync + Send) -> Option<T> {
    first_hit_seq(n, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let f = |i: u64| if i % 7 == 3 { Some(i * i) } else { None };
        assert_eq!(filter_map_indexed(10_000, f), filter_map_indexed_seq(10_000, f));
        assert_eq!(
            sum_indexed(10_000, |i| i % 13),
            sum_indexed_seq(10_000, |i| i % 13)
        );
        let g = |i: u64| if i >= 8191 { Some(i) } else { None };
        assert_eq!(first_hit(10_000, g), Some(8191));
    }
}
