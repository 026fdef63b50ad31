//! Data-parallel evaluation over independent sample indices.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] fans work out
//! over the rayon pool; without it every mode runs sequentially. Results
//! are merged with an associative operation, so both modes agree exactly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `0..n` and folds the results with `merge`.
    pub fn map_reduce<T, F, M>(self, n: usize, identity: T, f: F, merge: M) -> T
    where
        T: Clone + Send + Sync,
        F: Fn(usize) -> T + Send + Sync,
        M: Fn(T, T) -> T + Send + Sync,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (0..n)
                .into_par_iter()
                .map(&f)
                .reduce(|| identity.clone(), &merge);
        }
        (0..n).map(f).fold(identity, merge)
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Send + Sync,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: usize| (i as f64).sin();
        let min = |a: f64, b: f64| a.min(b);
        let s = Exec::Sequential.map_reduce(10_000, f64::INFINITY, f, min);
        let p = Exec::Parallel.map_reduce(10_000, f64::INFINITY, f, min);
        assert_eq!(s, p);
        let xs: Vec<usize> = (0..100).collect();
        assert_eq!(
            Exec::Sequential.map(&xs, |x| x * 2),
            Exec::Parallel.map(&xs, |x| x * 2)
        );
    }
}
