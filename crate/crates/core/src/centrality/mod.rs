//! Node centrality measures.
//!
//! Every measure implements [`CentralityMeasure`] and is registered by name
//! in a [`Registry`]; callers select measures at runtime from config or CLI
//! strings (`degree`, `closeness`, `betweenness`, `eigenvector`, `load`).
//!
//! Per-source passes (closeness, betweenness, load) run on the rayon pool.
//! Partial score arrays are folded in a fixed source order, so results are
//! bit-identical for any thread count.

mod betweenness;
mod by_tn;
mod closeness;
mod degree;
mod eigenvector;
mod load;
mod reduce;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::CollabGraph;

pub use betweenness::{betweenness_centrality, Betweenness, BetweennessMode};
pub use by_tn::{centrality_by_tn, BucketStatistic, TnBucketCentrality};
pub use closeness::{closeness_centrality, Closeness};
pub use degree::{degree_centrality, Degree};
pub use eigenvector::{eigenvector_centrality, Eigenvector, EigenvectorOutcome};
pub use load::{load_centrality, load_pass, Load, LoadPass};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Closeness,
    Betweenness,
    Eigenvector,
    Load,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Degree,
        Measure::Closeness,
        Measure::Betweenness,
        Measure::Eigenvector,
        Measure::Load,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::Eigenvector => "eigenvector",
            Measure::Load => "load",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown centrality measure {s:?}")))
    }
}

/// Scores for one measure, one value per node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityScores {
    pub measure: Measure,
    /// Raw values as defined by the measure.
    pub values: Vec<f64>,
    /// Parameters that produced the scores, echoed into report sidecars.
    pub params: BTreeMap<String, serde_json::Value>,
}

impl CentralityScores {
    pub fn new(measure: Measure, values: Vec<f64>) -> Self {
        CentralityScores {
            measure,
            values,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Factor that maps raw values to the normalized variant:
    /// degree / (n-1), betweenness / ((n-1)(n-2)/2), load / ((n-1)(n-2)).
    /// Closeness and eigenvector values are already normalized. Zero when
    /// the graph is too small for the normalization to exist.
    pub fn normalization_factor(&self) -> f64 {
        let n = self.values.len() as f64;
        match self.measure {
            Measure::Degree if n > 1.0 => 1.0 / (n - 1.0),
            Measure::Betweenness if n > 2.0 => 2.0 / ((n - 1.0) * (n - 2.0)),
            Measure::Load if n > 2.0 => 1.0 / ((n - 1.0) * (n - 2.0)),
            Measure::Closeness | Measure::Eigenvector => 1.0,
            _ => 0.0,
        }
    }

    pub fn normalized_values(&self) -> Vec<f64> {
        let f = self.normalization_factor();
        self.values.iter().map(|v| v * f).collect()
    }
}

/// Runtime knobs shared by all measures; each measure reads what it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityOptions {
    /// `None` computes exact betweenness; `Some(k)` samples `k` pivots.
    pub betweenness_samples: Option<usize>,
    pub sample_seed: u64,
    pub tolerance: f64,
    pub max_iters: usize,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        CentralityOptions {
            betweenness_samples: None,
            sample_seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

pub trait CentralityMeasure: Send + Sync {
    fn measure(&self) -> Measure;

    fn compute(&self, g: &CollabGraph, opts: &CentralityOptions) -> Result<CentralityScores>;

    fn name(&self) -> &'static str {
        self.measure().name()
    }
}

/// Name → measure lookup.
pub struct Registry {
    entries: BTreeMap<&'static str, Box<dyn CentralityMeasure>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, m: Box<dyn CentralityMeasure>) {
        self.entries.insert(m.name(), m);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CentralityMeasure> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| {
                Error::Validation(format!(
                    "unknown centrality measure {name:?} (known: {})",
                    self.names().collect::<Vec<_>>().join(", ")
                ))
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(Degree));
        r.register(Box::new(Closeness));
        r.register(Box::new(Betweenness));
        r.register(Box::new(Eigenvector));
        r.register(Box::new(Load));
        r
    }
}
