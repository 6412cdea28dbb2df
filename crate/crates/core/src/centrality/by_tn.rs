use std::collections::BTreeMap;

use serde::Serialize;

use super::CentralityScores;
use crate::error::{Error, Result};
use crate::tn::TnResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BucketStatistic {
    #[default]
    Mean,
    Median,
}

impl std::str::FromStr for BucketStatistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(BucketStatistic::Mean),
            "median" => Ok(BucketStatistic::Median),
            other => Err(Error::Validation(format!("unknown bucket statistic {other:?}"))),
        }
    }
}

/// Log-centrality summary for the reachable nodes sharing one TN value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TnBucketCentrality {
    pub tn: u32,
    pub n_nodes: usize,
    pub n_positive: usize,
    /// Nodes with value 0; never log-transformed.
    pub n_zero: usize,
    /// Statistic of `ln(value)` over positive values; `None` when the bucket
    /// has none.
    pub ln_raw: Option<f64>,
    pub ln_normalized: Option<f64>,
}

fn summarize(mut xs: Vec<f64>, stat: BucketStatistic) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    Some(match stat {
        BucketStatistic::Mean => xs.iter().sum::<f64>() / xs.len() as f64,
        BucketStatistic::Median => {
            xs.sort_by(|a, b| a.partial_cmp(b).expect("finite logs"));
            let m = xs.len() / 2;
            if xs.len() % 2 == 1 {
                xs[m]
            } else {
                (xs[m - 1] + xs[m]) / 2.0
            }
        }
    })
}

/// Per-TN statistic of `ln(centrality)` over reachable nodes with positive
/// values. TN values with no reachable node produce no row.
pub fn centrality_by_tn(
    scores: &CentralityScores,
    tn: &TnResult,
    stat: BucketStatistic,
) -> Result<Vec<TnBucketCentrality>> {
    if scores.values.len() != tn.len() {
        return Err(Error::Argument(format!(
            "{} scores for {} TN entries",
            scores.values.len(),
            tn.len()
        )));
    }
    let factor = scores.normalization_factor();
    let mut buckets: BTreeMap<u32, (usize, Vec<f64>)> = BTreeMap::new();
    for (v, &value) in scores.values.iter().enumerate() {
        let Some(t) = tn.tn(v as u32) else { continue };
        let entry = buckets.entry(t).or_default();
        entry.0 += 1;
        if value > 0.0 {
            entry.1.push(value.ln());
        }
    }
    Ok(buckets
        .into_iter()
        .map(|(t, (n_nodes, logs))| {
            let n_positive = logs.len();
            let ln_raw = summarize(logs, stat);
            let ln_normalized = if factor > 0.0 {
                ln_raw.map(|x| x + factor.ln())
            } else {
                None
            };
            TnBucketCentrality {
                tn: t,
                n_nodes,
                n_positive,
                n_zero: n_nodes - n_positive,
                ln_raw,
                ln_normalized,
            }
        })
        .collect())
}
