//! Execution helpers: parallel map with a sequential fallback.
//!
//! All reductions preserve input order, so results are bit-identical
//! whether or not the `parallel` feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "DISPLAB_WORKERS";

/// Configures the global worker pool from `DISPLAB_WORKERS`.
///
/// No-op when the variable is unset, unparsable, or the pool has already
/// been initialized (later calls lose the race by design). Sequential
/// builds ignore the setting entirely.
pub fn configure_workers_from_env() {
    #[cfg(feature = "parallel")]
    {
        if let Ok(v) = std::env::var(WORKERS_ENV) {
            if let Ok(n) = v.trim().parse::<usize>() {
                if n >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
                }
            }
        }
    }
}

/// Number of workers the pool will use (1 for sequential builds).
pub fn current_workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Order-preserving map over a slice.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
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

/// Order-preserving map over an index range.
pub fn par_map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential map, always. Kept public so benches can compare modes.
pub fn seq_map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let ys = par_map(&xs, |x| x * x);
        let zs: Vec<u64> = xs.iter().map(|x| x * x).collect();
        assert_eq!(ys, zs);
    }

    #[test]
    fn range_maps_agree() {
        let par = par_map_range(257, |i| (i as f64).sqrt());
        let seq = seq_map_range(257, |i| (i as f64).sqrt());
        assert_eq!(par, seq);
    }
}
