use super::{CentralityMeasure, CentralityOptions, CentralityScores, Measure};
use crate::error::Result;
use crate::graph::CollabGraph;

pub struct Degree;

/// Raw degree per node.
pub fn degree_centrality(g: &CollabGraph) -> CentralityScores {
    let values = (0..g.n_nodes() as u32).map(|v| g.degree(v) as f64).collect();
    CentralityScores::new(Measure::Degree, values)
}

impl CentralityMeasure for Degree {
    fn measure(&self) -> Measure {
        Measure::Degree
    }

    fn compute(&self, g: &CollabGraph, _: &CentralityOptions) -> Result<CentralityScores> {
        Ok(degree_centrality(g))
    }
}
