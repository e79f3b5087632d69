//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) `Exec::Auto` runs on the rayon
//! pool; without it, or with `Exec::Sequential`, the same closures run on
//! the calling thread. Results are always returned in input order, so
//! both modes are observably identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Auto,
    Sequential,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Auto
    }
}

pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

pub fn map_range<R, F>(exec: Exec, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// First failure in input order, if any.
pub fn first_failure<T, E, F>(exec: Exec, items: &[T], f: F) -> Option<E>
where
    T: Sync,
    E: Send,
    F: Fn(&T) -> Option<E> + Sync + Send,
{
    map(exec, items, f).into_iter().flatten().next()
}

pub fn count<T, F>(exec: Exec, items: &[T], pred: F) -> usize
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    map(exec, items, pred).into_iter().filter(|b| *b).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..500).collect();
        let a = map(Exec::Auto, &xs, |x| x * x % 97);
        let b = map(Exec::Sequential, &xs, |x| x * x % 97);
        assert_eq!(a, b);
        assert_eq!(map_range(Exec::Auto, 10, |i| i + 1), (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn first_failure_is_in_input_order() {
        let xs: Vec<u32> = (0..100).collect();
        let f = first_failure(Exec::Auto, &xs, |x| (x % 7 == 6).then_some(*x));
        assert_eq!(f, Some(6));
        assert_eq!(count(Exec::Sequential, &xs, |x| x % 2 == 0), 50);
    }
}
