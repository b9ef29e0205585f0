//! Parallel sweep execution. Rows come back in enumeration order.

use rayon::prelude::*;

use frac_ostrowski_core::harness::{enumerate, evaluate_cell, summarize, SweepOutcome, SweepSpec};

/// Environment variable capping the number of sweep threads.
pub const THREADS_ENV: &str = "FRAC_OSTROWSKI_THREADS";

/// Thread count from `FRAC_OSTROWSKI_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Same result as the sequential `run_sweep`, evaluated on a rayon pool.
pub fn run_sweep_parallel(spec: &SweepSpec, threads: Option<usize>) -> anyhow::Result<SweepOutcome> {
    spec.verify.quadrature.validate()?;
    let (cells, skipped) = enumerate(spec)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.or_else(thread_cap) {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let rows = pool.install(|| {
        cells
            .par_iter()
            .map(|c| evaluate_cell(spec.theorem, &spec.verify, c))
            .collect::<Vec<_>>()
    });
    let summary = summarize(&rows, skipped);
    Ok(SweepOutcome { rows, summary })
}
