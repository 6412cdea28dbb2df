//! Eigenvector centrality by power iteration on the largest connected
//! component.
//!
//! The iteration uses `x <- (A x + x) / ||A x + x||`, i.e. power iteration on
//! `A + I`. The shift keeps the same principal eigenvector but removes the
//! period-2 oscillation plain power iteration shows on bipartite components.

use super::{CentralityMeasure, CentralityOptions, CentralityScores, Measure};
use crate::error::{Error, Result};
use crate::graph::{connected_components, CollabGraph, NodeId};

pub struct Eigenvector;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorOutcome {
    pub scores: CentralityScores,
    /// Rayleigh quotient `x . A x` on the component.
    pub eigenvalue: f64,
    /// `||A x - lambda x||_2` at the returned iterate.
    pub residual: f64,
    pub iterations: usize,
    pub component_size: usize,
}

fn mul_adj(g: &CollabGraph, x: &[f64], out: &mut [f64]) {
    for (v, o) in out.iter_mut().enumerate() {
        *o = g.neighbors(v as NodeId).iter().map(|&u| x[u as usize]).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn residual(ax: &[f64], x: &[f64], lambda: f64) -> f64 {
    ax.iter()
        .zip(x)
        .map(|(a, b)| (a - lambda * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Nodes outside the largest component score 0. Convergence requires both
/// successive iterates within `tolerance` in max-norm and a residual of at
/// most `10 * tolerance`.
pub fn eigenvector_centrality(g: &CollabGraph, tolerance: f64, max_iters: usize) -> Result<EigenvectorOutcome> {
    if g.n_nodes() == 0 {
        return Err(Error::Argument("eigenvector centrality of an empty graph".into()));
    }
    if !(tolerance > 0.0) {
        return Err(Error::Argument(format!("tolerance must be positive, got {tolerance}")));
    }
    let comps = connected_components(g);
    let largest = comps.largest().expect("non-empty graph");
    let members: Vec<NodeId> = (0..g.n_nodes() as NodeId)
        .filter(|&v| comps.component[v as usize] == largest)
        .collect();
    let sub = g.induced_subgraph(&members)?;
    let m = members.len();

    let mut x = vec![1.0 / (m as f64).sqrt(); m];
    let mut ax = vec![0.0; m];
    let mut next = vec![0.0; m];
    let mut last_residual = f64::INFINITY;
    let mut converged = None;
    for iter in 1..=max_iters {
        mul_adj(&sub, &x, &mut ax);
        for i in 0..m {
            next[i] = ax[i] + x[i];
        }
        let norm = dot(&next, &next).sqrt();
        for v in next.iter_mut() {
            *v /= norm;
        }
        let diff = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        std::mem::swap(&mut x, &mut next);
        if diff < tolerance {
            mul_adj(&sub, &x, &mut ax);
            let lambda = dot(&x, &ax);
            last_residual = residual(&ax, &x, lambda);
            if last_residual <= 10.0 * tolerance {
                converged = Some((iter, lambda));
                break;
            }
        }
    }
    let Some((iterations, eigenvalue)) = converged else {
        if !last_residual.is_finite() {
            mul_adj(&sub, &x, &mut ax);
            last_residual = residual(&ax, &x, dot(&x, &ax));
        }
        return Err(Error::NoConvergence {
            iterations: max_iters,
            residual: last_residual,
        });
    };

    let mut values = vec![0.0; g.n_nodes()];
    for (i, &v) in members.iter().enumerate() {
        values[v as usize] = x[i];
    }
    let scores = CentralityScores::new(Measure::Eigenvector, values)
        .with_param("tolerance", tolerance)
        .with_param("max_iters", max_iters as u64)
        .with_param("iterations", iterations as u64)
        .with_param("eigenvalue", eigenvalue)
        .with_param("component_size", m as u64);
    Ok(EigenvectorOutcome {
        scores,
        eigenvalue,
        residual: last_residual,
        iterations,
        component_size: m,
    })
}

impl CentralityMeasure for Eigenvector {
    fn measure(&self) -> Measure {
        Measure::Eigenvector
    }

    fn compute(&self, g: &CollabGraph, opts: &CentralityOptions) -> Result<CentralityScores> {
        eigenvector_centrality(g, opts.tolerance, opts.max_iters).map(|o| o.scores)
    }
}
