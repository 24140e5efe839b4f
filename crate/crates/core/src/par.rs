//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! rayon's pool; without it everything runs in order on the calling thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a batch of independent jobs is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the global rayon pool; same as `Sequential` when the `parallel`
    /// feature is off.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
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

/// `true` if `pred` holds for every index in `0..n`.
pub fn all_indices<F>(exec: Execution, n: u64, pred: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().all(pred);
    }
    let _ = exec;
    (0..n).all(pred)
}

/// Runs `f` on a dedicated pool of `jobs` threads when parallelism is
/// available and `jobs > 1`, otherwise inline.
pub fn with_jobs<R, F>(jobs: usize, f: F) -> R
where
    R: Send,
    F: FnOnce(Execution) -> R + Send,
{
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(|| f(Execution::Parallel));
        }
    }
    let _ = jobs;
    f(Execution::Sequential)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let v: Vec<u64> = (0..100).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(
                map(exec, &v, |x| x * 2),
                v.iter().map(|x| x * 2).collect::<Vec<_>>()
            );
            assert!(all_indices(exec, 50, |i| i < 50));
            assert!(!all_indices(exec, 50, |i| i != 17));
        }
    }
}
