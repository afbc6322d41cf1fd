//! Monte Carlo runs fanned out over rayon. Shards use fixed sizes and
//! per-shard ChaCha8 streams, so results do not depend on the thread count.

use involis::montecarlo::{check_samples, run_shard, shard_plan, EnsembleSpec, ScaledSample};
use involis::Result;
use rayon::prelude::*;

pub fn run_parallel(spec: &EnsembleSpec, samples: usize, threads: Option<usize>) -> Result<Vec<ScaledSample>> {
    check_samples(samples)?;
    let plan = shard_plan(samples);
    let work = || -> Result<Vec<ScaledSample>> {
        let shards: Vec<Result<Vec<ScaledSample>>> =
            plan.par_iter().enumerate().map(|(k, &count)| run_shard(spec, k, count)).collect();
        let mut out = Vec::with_capacity(samples);
        for s in shards {
            out.extend(s?);
        }
        Ok(out)
    };
    match threads {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| involis::Error::InvalidConfig(e.to_string()))?
            .install(work),
        _ => work(),
    }
}
