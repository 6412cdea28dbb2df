//! Betweenness centrality via Brandes dependency accumulation.
//!
//! One BFS per source counts shortest paths (`sigma`); walking the BFS order
//! backwards accumulates each node's dependency on the source. Unordered
//! pairs are counted once and endpoints are excluded, so the raw value of
//! `v` is `sum over s != v != t of sigma_st(v) / sigma_st`.
//!
//! Sampled mode uses linear scaling: a pivot `s` credits `v` with the pair
//! `(s, t)` weighted by `d(s, v) / d(s, t)`. The weights of the two
//! directions of a pair sum to one, so summing over every pivot gives the
//! exact value, and nodes next to a pivot are not overcounted.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::reduce::sum_over_sources;
use super::{CentralityMeasure, CentralityOptions, CentralityScores, Measure};
use crate::error::{Error, Result};
use crate::graph::{CollabGraph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetweennessMode {
    Exact,
    /// Uniformly drawn pivot sources, without replacement, with linear
    /// scaling, scaled by `n / samples`.
    Sampled { samples: usize, seed: u64 },
}

pub struct Betweenness;

struct Workspace {
    dist: Vec<u32>,
    /// Shortest-path count during the forward sweep. Once a node is finished
    /// in the backward sweep it holds `(1 + delta) / sigma`, which is all its
    /// predecessors need.
    val: Vec<f64>,
    order: Vec<NodeId>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            dist: vec![u32::MAX; n],
            val: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }
}

fn accumulate(g: &CollabGraph, ws: &mut Workspace, s: NodeId, linear: bool, acc: &mut [f64]) {
    let Workspace { dist, val, order } = ws;
    order.clear();
    dist[s as usize] = 0;
    val[s as usize] = 1.0;
    order.push(s);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let dv = dist[v as usize];
        let sv = val[v as usize];
        for &w in g.neighbors(v) {
            let dw = &mut dist[w as usize];
            if *dw == u32::MAX {
                *dw = dv + 1;
                order.push(w);
            }
            if *dw == dv + 1 {
                val[w as usize] += sv;
            }
        }
    }
    // Successors of v are its neighbors one level further out; all of them
    // are finished before v in reverse BFS order.
    for &v in order.iter().rev() {
        let dv = dist[v as usize];
        let mut sum = 0.0;
        for &w in g.neighbors(v) {
            if dist[w as usize] == dv + 1 {
                sum += val[w as usize];
            }
        }
        let sv = val[v as usize];
        let mut d = sv * sum;
        if linear {
            d *= dv as f64 / (dv + 1) as f64;
        }
        val[v as usize] = (1.0 + d) / sv;
        if v != s {
            acc[v as usize] += d;
        }
    }
    for &v in order.iter() {
        dist[v as usize] = u32::MAX;
        val[v as usize] = 0.0;
    }
}

pub fn betweenness_centrality(g: &CollabGraph, mode: BetweennessMode) -> Result<CentralityScores> {
    let n = g.n_nodes();
    // (pivots, factor applied to the summed dependencies, sampling params)
    let (sources, scale, label): (Vec<NodeId>, f64, _) = match mode {
        BetweennessMode::Sampled { samples: 0, .. } => {
            return Err(Error::Argument("betweenness sampling needs at least one pivot".into()))
        }
        BetweennessMode::Sampled { samples, .. } if samples >= n => {
            if samples > n {
                log::warn!("{samples} betweenness pivots requested for {n} nodes; computing exactly");
            }
            ((0..n as NodeId).collect(), 0.5, None)
        }
        BetweennessMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pivots: Vec<NodeId> = rand::seq::index::sample(&mut rng, n, samples)
                .into_iter()
                .map(|i| i as NodeId)
                .collect();
            pivots.sort_unstable();
            (pivots, n as f64 / samples as f64, Some((samples, seed)))
        }
        // each unordered pair is seen from both endpoints
        BetweennessMode::Exact => ((0..n as NodeId).collect(), 0.5, None),
    };
    let linear = label.is_some();
    let mut values = sum_over_sources(n, &sources, || Workspace::new(n), |ws, s, acc| {
        accumulate(g, ws, s, linear, acc)
    });
    for v in &mut values {
        *v *= scale;
    }
    let scores = CentralityScores::new(Measure::Betweenness, values);
    Ok(match label {
        None => scores.with_param("mode", "exact"),
        Some((samples, seed)) => scores
            .with_param("mode", "sampled")
            .with_param("samples", samples as u64)
            .with_param("seed", seed),
    })
}

impl CentralityMeasure for Betweenness {
    fn measure(&self) -> Measure {
        Measure::Betweenness
    }

    fn compute(&self, g: &CollabGraph, opts: &CentralityOptions) -> Result<CentralityScores> {
        let mode = match opts.betweenness_samples {
            None => BetweennessMode::Exact,
            Some(samples) => BetweennessMode::Sampled {
                samples,
                seed: opts.sample_seed,
            },
        };
        betweenness_centrality(g, mode)
    }
}
