use crate::error::{usage, CliResult};

/// Caps the worker count; `0` or unset means one worker per core.
pub const THREADS_ENV: &str = "CK_TOMO_THREADS";

pub fn threads_from_env() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!(
                "{THREADS_ENV} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(0),
    }
}

pub fn build_pool(threads: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| usage(format!("cannot start worker pool: {e}")))
}
