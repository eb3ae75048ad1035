//! Data-parallel map over independent work items.
//!
//! With the `rayon` feature the work is spread over the global pool unless
//! parallelism has been switched off at runtime; without it everything runs
//! in order on the calling thread.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Runtime switch (no effect without the `rayon` feature).
pub fn set_parallel(on: bool) {
    PARALLEL.store(on, Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "rayon") && PARALLEL.load(Ordering::SeqCst)
}

#[cfg(feature = "rayon")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if is_parallel() && items.len() > 1 {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "rayon"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn order_preserved() {
        let v: Vec<u64> = (0..100).collect();
        assert_eq!(super::map(&v, |x| x * x), v.iter().map(|x| x * x).collect::<Vec<_>>());
    }
}
