//! Data-parallel map over independent jobs. With the `parallel` feature the
//! work is spread over the rayon pool; without it everything runs in order.
//! Output order always matches input order.

pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_par<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_par<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_seq(items, f)
}

/// Parallel when the feature is on.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_par(items, f)
}

/// Sets the number of worker threads; a no-op without the `parallel` feature
/// or once the pool has been initialised.
pub fn set_jobs(jobs: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u64> = (0..100).collect();
        assert_eq!(map(&v, |x| x * x), map_seq(&v, |x| x * x));
    }
}
