//! Execution of independent per-item work, parallel when the `parallel`
//! feature is enabled.
//!
//! Callers hand over a pure function and get results back in input order, so
//! both paths produce identical output; the sequential twin stays compiled in
//! all configurations for differential tests and benches.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn map_items<T, U>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U>
where
    T: Sync,
    U: Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub(crate) fn map_items_seq<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Routes to the parallel or the sequential mapper at runtime.
pub(crate) fn dispatch<T, U>(
    sequential: bool,
    items: &[T],
    f: impl Fn(&T) -> U + Sync + Send,
) -> Vec<U>
where
    T: Sync,
    U: Send,
{
    if sequential {
        map_items_seq(items, f)
    } else {
        map_items(items, f)
    }
}
