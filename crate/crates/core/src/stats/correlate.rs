use serde::Serialize;

use super::{CorrelationMethod, CorrelationResult, Method};
use crate::error::{Error, Result};
use crate::tn::TnResult;

/// A per-scholar indicator indexed by scholar id; `None` marks a missing
/// value, dropped pairwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Indicator {
    pub name: String,
    pub values: Vec<Option<f64>>,
}

impl Indicator {
    pub fn new(name: impl Into<String>, values: Vec<Option<f64>>) -> Self {
        Indicator {
            name: name.into(),
            values,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationRow {
    pub method: Method,
    pub indicator: String,
    #[serde(flatten)]
    pub result: CorrelationResult,
}

/// Correlate TN against each indicator with each method. Unreachable
/// scholars never contribute; with `exclude_seeds` the TN = 0 scholars are
/// dropped too. Rows are ordered by method, then indicator.
pub fn correlate_tn(
    tn: &TnResult,
    indicators: &[Indicator],
    methods: &[&dyn CorrelationMethod],
    exclude_seeds: bool,
) -> Result<Vec<CorrelationRow>> {
    let mut columns = Vec::with_capacity(indicators.len());
    for ind in indicators {
        if ind.values.len() != tn.len() {
            return Err(Error::Argument(format!(
                "indicator {:?} has {} values for {} scholars",
                ind.name,
                ind.values.len(),
                tn.len()
            )));
        }
        let (x, y): (Vec<f64>, Vec<f64>) = tn
            .values()
            .iter()
            .zip(&ind.values)
            .filter_map(|(t, v)| match (t, v) {
                (Some(0), _) if exclude_seeds => None,
                (Some(t), Some(v)) => Some((*t as f64, *v)),
                _ => None,
            })
            .unzip();
        if x.len() < 3 {
            return Err(Error::Argument(format!(
                "indicator {:?} has only {} complete pairs",
                ind.name,
                x.len()
            )));
        }
        columns.push((ind.name.as_str(), x, y));
    }
    let mut rows = Vec::with_capacity(methods.len() * columns.len());
    for m in methods {
        for (name, x, y) in &columns {
            rows.push(CorrelationRow {
                method: m.method(),
                indicator: name.to_string(),
                result: m.correlate(x, y)?,
            });
        }
    }
    Ok(rows)
}
