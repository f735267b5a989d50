//! Data-parallel map with a sequential fallback, and the environment caps.
//!
//! With the `parallel` feature (on by default) [`par_map`] runs on the rayon
//! pool. Without it, or after [`set_sequential`]`(true)`, it is a plain
//! iterator map. Output order always matches input order, so results do not
//! depend on the execution path.

use std::sync::atomic::{AtomicBool, Ordering};

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces the sequential path at runtime (used by the benches).
pub fn set_sequential(on: bool) {
    SEQUENTIAL.store(on, Ordering::Relaxed);
}

/// True when [`par_map`] will use worker threads.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::Relaxed)
}

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if items.len() < 2 || !is_parallel() {
        return items.iter().map(f).collect();
    }
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Maps and collects the first error, in input order.
pub fn try_par_map<T, U, E, F>(items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    par_map(items, f).into_iter().collect()
}

fn env_u32(name: &str) -> Option<u32> {
    std::env::var(name).ok()?.trim().parse().ok()
}

/// Degree cap for the doubling sweep: `FERRAND_DEGREE_CAP` if set, else the
/// given default.
pub fn degree_cap(default: u32) -> u32 {
    env_u32("FERRAND_DEGREE_CAP").unwrap_or(default)
}

/// Cap on the exponent `t` used for section modules: `FERRAND_T_CAP` if set,
/// else the given default.
pub fn t_cap(default: u32) -> u32 {
    env_u32("FERRAND_T_CAP").unwrap_or(default)
}
