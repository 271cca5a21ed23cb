//! Parallel execution helpers. With the `parallel` feature (default) the
//! hot enumerations fan out over rayon; without it everything runs
//! sequentially. Every reduction used here is exact and order-independent,
//! so results are identical either way.

/// Run `f` on a rayon pool capped at `threads` workers (global pool when
/// `None`). Without the `parallel` feature the cap is ignored.
#[cfg(feature = "parallel")]
pub fn run_with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(t) if t > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("failed to build thread pool")
            .install(f),
        _ => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_with_threads<R: Send>(_threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Map `0..n` and reduce with an associative, commutative `combine`.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, M, C>(n: usize, map: M, combine: C) -> Option<T>
where
    T: Send,
    M: Fn(usize) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(map).reduce_with(combine)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, M, C>(n: usize, map: M, combine: C) -> Option<T>
where
    T: Send,
    M: Fn(usize) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    (0..n).map(map).reduce(combine)
}
