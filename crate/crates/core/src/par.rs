//! Data-parallel helpers with a sequential fallback.
//!
//! Every sweep in the crate goes through [`map`] or [`flat_map`] with an
//! explicit [`Exec`] mode, so benchmarks can compare both paths in one
//! binary. Without the `parallel` feature, [`Exec::Parallel`] runs
//! sequentially.

use std::sync::atomic::{AtomicUsize, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

static DEFAULT_EXEC: AtomicUsize = AtomicUsize::new(1);

/// Process-wide default used by functions that do not take an explicit mode.
pub fn default_exec() -> Exec {
    if DEFAULT_EXEC.load(Ordering::Relaxed) == 0 {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

pub fn set_default_exec(exec: Exec) {
    DEFAULT_EXEC.store(
        match exec {
            Exec::Sequential => 0,
            Exec::Parallel => 1,
        },
        Ordering::Relaxed,
    );
}

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], exec: Exec, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match exec {
        Exec::Sequential => items.iter().map(f).collect(),
        Exec::Parallel => items.par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], _exec: Exec, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

pub fn flat_map<T, U, F>(items: &[T], exec: Exec, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Sync + Send,
{
    map(items, exec, f).into_iter().flatten().collect()
}

/// True iff `f` holds for every item.
pub fn all<T, F>(items: &[T], exec: Exec, f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    map(items, exec, f).into_iter().all(|b| b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(&xs, Exec::Sequential, |x| x * x);
        let b = map(&xs, Exec::Parallel, |x| x * x);
        assert_eq!(a, b);
        assert!(all(&xs, Exec::Parallel, |x| *x < 1000));
    }
}
