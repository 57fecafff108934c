//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the helpers fan work out over
//! rayon's global pool when asked to; without it, or with
//! [`Exec::Sequential`], they run on the calling thread. Results never depend
//! on the mode: searches return the first hit in iteration order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

pub fn any<F>(exec: Exec, n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().any(f);
    }
    let _ = exec;
    (0..n).any(f)
}

pub fn all<F>(exec: Exec, n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().all(f);
    }
    let _ = exec;
    (0..n).all(f)
}

/// First index in `0..n` (in order) for which `f` returns `Some`.
pub fn find_first<T, F>(exec: Exec, n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().filter_map(f).find_first(|_| true);
    }
    let _ = exec;
    (0..n).find_map(f)
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Like [`any`], with per-worker scratch state created by `init`.
pub fn any_init<S, I, F>(exec: Exec, n: usize, init: I, f: F) -> bool
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n)
            .into_par_iter()
            .map_init(&init, |s, i| f(s, i))
            .any(|b| b);
    }
    let _ = exec;
    let mut s = init();
    (0..n).any(|i| f(&mut s, i))
}

pub fn all_init<S, I, F>(exec: Exec, n: usize, init: I, f: F) -> bool
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> bool + Sync + Send,
{
    !any_init(exec, n, init, |s, i| !f(s, i))
}

/// Like [`find_first`], with per-worker scratch state.
pub fn find_first_init<S, T, I, F>(exec: Exec, n: usize, init: I, f: F) -> Option<T>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n)
            .into_par_iter()
            .map_init(&init, |s, i| f(s, i))
            .find_first(|r| r.is_some())
            .flatten();
    }
    let _ = exec;
    let mut s = init();
    (0..n).find_map(|i| f(&mut s, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert!(any(exec, 100, |i| i == 57));
            assert!(!all(exec, 100, |i| i < 99));
            assert_eq!(
                find_first(exec, 1000, |i| (i % 7 == 3 && i > 10).then_some(i)),
                Some(17)
            );
            assert_eq!(map(exec, &[1, 2, 3], |x| x * 2), vec![2, 4, 6]);
        }
    }
}
