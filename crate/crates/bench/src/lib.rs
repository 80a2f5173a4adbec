//! Fixed workloads shared by the benchmarks.

use conic_core::corpus::{self, CorpusConfig, Instance};

pub const SEED: u64 = 0x5eed;

/// Rank-one instances in dimension exactly `dim`.
pub fn rank_one(dim: usize, count: usize) -> Vec<Instance> {
    let cfg = CorpusConfig { min_dim: dim, max_dim: dim, ..CorpusConfig::default() };
    corpus::rank_one_corpus(SEED + dim as u64, count, &cfg)
}

/// Instances whose rank-`r` action admits a reduction.
pub fn reducible(r: usize, count: usize) -> Vec<Instance> {
    let cfg = CorpusConfig { min_dim: r + 1, max_dim: r + 2, ..CorpusConfig::default() };
    let mut rng = corpus::rng(SEED + 100 + r as u64);
    (0..count).map(|_| corpus::random_reducible_instance(&mut rng, &cfg, r)).collect()
}
