//! Data-parallel map helpers with a sequential fallback.
//!
//! Verification sweeps and fixed-degree tree enumeration are
//! embarrassingly parallel: independent work items whose outputs are
//! merged in input order. These wrappers run the closure through rayon
//! when the `parallel` feature is compiled in *and* the caller passes
//! `parallel = true` (the runtime switch behind `--parallel-trials`),
//! and degrade to a plain sequential loop otherwise. Output order is the
//! input order in every mode, so results are byte-identical either way.

/// Map `f` over `items`, preserving order.
pub fn map_vec<T, U, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}

/// Map `f` over `items` and concatenate the per-item output vectors,
/// preserving item order.
pub fn flat_map_vec<T, U, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Vec<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.into_par_iter().flat_map_iter(f).collect();
    }
    let _ = parallel;
    items.into_iter().flat_map(f).collect()
}
