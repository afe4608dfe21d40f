//! Optional data parallelism.
//!
//! With the `parallel` feature (on by default) [`Parallelism::Parallel`] runs
//! the closures on the rayon pool; without it every helper runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest number of rows handed to one rayon task by [`for_each_mut`].
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// `items.iter().map(f).collect()`, possibly on the rayon pool. Order is kept.
pub fn map<T, R, F>(par: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = par;
    items.iter().map(f).collect()
}

/// `(0..n).map(f).collect()`, possibly on the rayon pool.
pub fn map_range<R, F>(par: Parallelism, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = par;
    (0..n).map(f).collect()
}

/// Apply `f` to every element of `items`, possibly in parallel.
pub fn for_each_mut<T, F>(par: Parallelism, items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        items.par_iter_mut().enumerate().with_min_len(MIN_CHUNK).for_each(|(i, x)| f(i, x));
        return;
    }
    let _ = par;
    items.iter_mut().enumerate().for_each(|(i, x)| f(i, x));
}
