use anyhow::Context;
use minkoscope::cli::{run, THREADS_ENV};

fn main() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV}={v} is not a thread count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("failed to configure the worker pool")?;
    }
    std::process::exit(run(std::env::args_os()));
}
