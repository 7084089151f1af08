//! Row-parallel helpers. Each closure sees one row; callers combine the
//! per-row results in index order.

use alloc::vec::Vec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn fill_rows<F>(entries: &mut [f64], n: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    entries
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(i, row)| f(i, row));
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn fill_rows<F>(entries: &mut [f64], n: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    entries
        .chunks_mut(n)
        .enumerate()
        .for_each(|(i, row)| f(i, row));
}

#[cfg(feature = "parallel")]
pub(crate) fn map_rows<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_rows<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Sum of `f(i)` over rows, accumulated in row order.
pub(crate) fn sum_rows<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    map_rows(n, f).into_iter().fold(0.0, |acc, v| acc + v)
}
