//! Turing Number: hop distance from every scholar to the nearest member of a
//! seed set (the laureates), its distribution, and the random-seed null
//! model.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, CollabGraph, NodeId, UNREACHED};

/// Default number of null-model trials.
pub const DEFAULT_TRIALS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnResult {
    tn: Vec<Option<u32>>,
    seeds: Vec<NodeId>,
    histogram: BTreeMap<u32, usize>,
    n_unreachable: usize,
}

impl TnResult {
    /// `None` when no seed reaches `v`.
    pub fn tn(&self, v: NodeId) -> Option<u32> {
        self.tn[v as usize]
    }

    pub fn reachable(&self, v: NodeId) -> bool {
        self.tn[v as usize].is_some()
    }

    pub fn values(&self) -> &[Option<u32>] {
        &self.tn
    }

    pub fn seeds(&self) -> &[NodeId] {
        &self.seeds
    }

    /// TN value → number of reachable nodes with that value.
    pub fn histogram(&self) -> &BTreeMap<u32, usize> {
        &self.histogram
    }

    pub fn n_unreachable(&self) -> usize {
        self.n_unreachable
    }

    pub fn n_reachable(&self) -> usize {
        self.tn.len() - self.n_unreachable
    }

    pub fn len(&self) -> usize {
        self.tn.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tn.is_empty()
    }

    /// Build from precomputed per-node values, e.g. when reading `tn.csv`.
    pub fn from_values(tn: Vec<Option<u32>>) -> Self {
        let seeds = tn
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == Some(0))
            .map(|(i, _)| i as NodeId)
            .collect();
        let mut histogram = BTreeMap::new();
        let mut n_unreachable = 0;
        for t in &tn {
            match t {
                Some(d) => *histogram.entry(*d).or_insert(0) += 1,
                None => n_unreachable += 1,
            }
        }
        TnResult {
            tn,
            seeds,
            histogram,
            n_unreachable,
        }
    }
}

/// One multi-source BFS from `seeds`.
pub fn compute_tn(g: &CollabGraph, seeds: &[NodeId]) -> Result<TnResult> {
    if seeds.is_empty() {
        return Err(Error::Argument("seed set is empty".into()));
    }
    if let Some(&bad) = seeds.iter().find(|&&s| s as usize >= g.n_nodes()) {
        return Err(Error::Argument(format!(
            "seed {bad} out of range for graph with {} nodes",
            g.n_nodes()
        )));
    }
    let dist = bfs_distances(g, seeds);
    let tn = dist
        .into_iter()
        .map(|d| (d != UNREACHED).then_some(d))
        .collect();
    let mut r = TnResult::from_values(tn);
    let mut s: Vec<NodeId> = seeds.to_vec();
    s.sort_unstable();
    s.dedup();
    r.seeds = s;
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TnDistribution {
    pub histogram: BTreeMap<u32, usize>,
    /// Most frequent TN; ties go to the smaller value. `None` if nothing is
    /// reachable.
    pub modal_tn: Option<u32>,
    /// Fraction of reachable nodes with TN in [2, 5].
    pub share_2_to_5: f64,
    pub n_reachable: usize,
    pub n_unreachable: usize,
}

pub fn tn_distribution(r: &TnResult) -> TnDistribution {
    let hist = r.histogram().clone();
    let modal_tn = hist
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&t, _)| t);
    let in_band: usize = hist.range(2..=5).map(|(_, c)| c).sum();
    let n_reachable = r.n_reachable();
    TnDistribution {
        histogram: hist,
        modal_tn,
        share_2_to_5: if n_reachable == 0 {
            0.0
        } else {
            in_band as f64 / n_reachable as f64
        },
        n_reachable,
        n_unreachable: r.n_unreachable(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seeds: Vec<NodeId>,
    pub histogram: BTreeMap<u32, usize>,
    pub n_reachable: usize,
    /// Mean TN over reachable nodes.
    pub mean_tn: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BucketStat {
    pub tn: u32,
    /// Mean and population standard deviation of the bucket count across
    /// trials (a trial without the bucket contributes 0).
    pub mean_count: f64,
    pub std_count: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullModelResult {
    pub trials: usize,
    pub k: usize,
    pub rng_seed: u64,
    pub exclude_seeds: bool,
    pub per_trial: Vec<TrialResult>,
    pub buckets: Vec<BucketStat>,
    pub mean_tn: f64,
    pub std_mean_tn: f64,
}

#[derive(Debug, Clone)]
pub struct NullModelConfig {
    pub k: usize,
    pub trials: usize,
    pub rng_seed: u64,
    /// Nodes never drawn as seeds (the real laureates when
    /// `--exclude-seeds` is on). Empty draws from every node.
    pub excluded: BTreeSet<NodeId>,
}

/// Random-seed null model: each trial draws `k` distinct nodes uniformly
/// without replacement and recomputes TN from them.
///
/// Trial `i` uses a ChaCha8 generator seeded with `rng_seed` on stream `i`,
/// so the result is independent of thread count and scheduling.
pub fn null_model(g: &CollabGraph, cfg: &NullModelConfig) -> Result<NullModelResult> {
    if cfg.trials == 0 {
        return Err(Error::Argument("null model needs at least one trial".into()));
    }
    if cfg.k == 0 {
        return Err(Error::Argument("null model needs k >= 1".into()));
    }
    let pool: Vec<NodeId> = (0..g.n_nodes() as NodeId)
        .filter(|v| !cfg.excluded.contains(v))
        .collect();
    if cfg.k > pool.len() {
        return Err(Error::Argument(format!(
            "k = {} exceeds the {} candidate nodes",
            cfg.k,
            pool.len()
        )));
    }

    let per_trial: Vec<TrialResult> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            rng.set_stream(trial as u64);
            let mut seeds: Vec<NodeId> = rand::seq::index::sample(&mut rng, pool.len(), cfg.k)
                .into_iter()
                .map(|i| pool[i])
                .collect();
            seeds.sort_unstable();
            let r = compute_tn(g, &seeds).expect("seeds validated");
            let total: u64 = r.histogram().iter().map(|(&t, &c)| t as u64 * c as u64).sum();
            TrialResult {
                trial,
                seeds,
                histogram: r.histogram().clone(),
                n_reachable: r.n_reachable(),
                mean_tn: total as f64 / r.n_reachable() as f64,
            }
        })
        .collect();

    let all_tn: BTreeSet<u32> = per_trial
        .iter()
        .flat_map(|t| t.histogram.keys().copied())
        .collect();
    let buckets = all_tn
        .into_iter()
        .map(|tn| {
            let counts: Vec<f64> = per_trial
                .iter()
                .map(|t| t.histogram.get(&tn).copied().unwrap_or(0) as f64)
                .collect();
            let (mean, std) = mean_std(&counts);
            BucketStat {
                tn,
                mean_count: mean,
                std_count: std,
            }
        })
        .collect();
    let means: Vec<f64> = per_trial.iter().map(|t| t.mean_tn).collect();
    let (mean_tn, std_mean_tn) = mean_std(&means);

    Ok(NullModelResult {
        trials: cfg.trials,
        k: cfg.k,
        rng_seed: cfg.rng_seed,
        exclude_seeds: !cfg.excluded.is_empty(),
        per_trial,
        buckets,
        mean_tn,
        std_mean_tn,
    })
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}
