//! Load centrality.
//!
//! Every ordered pair `(s, t)` sends one unit of load from `s` to `t`. At
//! each node the load splits equally over the edges that lie on a shortest
//! path toward `t`. A node's load is the total it forwards for pairs where
//! it is neither endpoint.
//!
//! Splitting is linear, so all packets bound for the same target can travel
//! together: one BFS from `t` and a sweep from the farthest layer inward
//! handles every source at once.

use super::reduce::sum_over_sources;
use super::{CentralityMeasure, CentralityOptions, CentralityScores, Measure};
use crate::error::Result;
use crate::graph::{CollabGraph, NodeId};

pub struct Load;

struct Workspace {
    dist: Vec<u32>,
    flow: Vec<f64>,
    order: Vec<NodeId>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            dist: vec![u32::MAX; n],
            flow: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Route one unit from every node reachable from `target` to `target`.
    /// Leaves `flow[v]` = total load leaving `v` (its own unit included) and
    /// `flow[target]` = 1 + total absorbed.
    fn route(&mut self, g: &CollabGraph, target: NodeId) {
        let Workspace { dist, flow, order } = self;
        order.clear();
        dist[target as usize] = 0;
        order.push(target);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let dv = dist[v as usize];
            for &w in g.neighbors(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dv + 1;
                    order.push(w);
                }
            }
        }
        for &v in order.iter() {
            flow[v as usize] = 1.0;
        }
        for &v in order[1..].iter().rev() {
            let toward = dist[v as usize] - 1;
            let next = g.neighbors(v).iter().filter(|&&u| dist[u as usize] == toward);
            let k = next.clone().count();
            let share = flow[v as usize] / k as f64;
            for &u in next {
                flow[u as usize] += share;
            }
        }
    }

    fn reset(&mut self) {
        for &v in &self.order {
            self.dist[v as usize] = u32::MAX;
            self.flow[v as usize] = 0.0;
        }
    }
}

/// Per-target routing result, exposed for conservation checks.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadPass {
    /// Load forwarded by each node on behalf of other sources.
    pub through: Vec<f64>,
    /// Total load arriving at the target.
    pub absorbed: f64,
    /// Nodes reachable from the target, the target included.
    pub reached: usize,
}

pub fn load_pass(g: &CollabGraph, target: NodeId) -> LoadPass {
    let mut ws = Workspace::new(g.n_nodes());
    ws.route(g, target);
    let mut through = vec![0.0; g.n_nodes()];
    for &v in &ws.order[1..] {
        through[v as usize] = ws.flow[v as usize] - 1.0;
    }
    LoadPass {
        through,
        absorbed: ws.flow[target as usize] - 1.0,
        reached: ws.order.len(),
    }
}

/// Raw load over all ordered pairs; normalize by `(n-1)(n-2)`.
pub fn load_centrality(g: &CollabGraph) -> CentralityScores {
    let n = g.n_nodes();
    let targets: Vec<NodeId> = (0..n as NodeId).collect();
    let values = sum_over_sources(
        n,
        &targets,
        || Workspace::new(n),
        |ws, t, acc| {
            ws.route(g, t);
            for &v in &ws.order[1..] {
                acc[v as usize] += ws.flow[v as usize] - 1.0;
            }
            ws.reset();
        },
    );
    CentralityScores::new(Measure::Load, values)
}

impl CentralityMeasure for Load {
    fn measure(&self) -> Measure {
        Measure::Load
    }

    fn compute(&self, g: &CollabGraph, _: &CentralityOptions) -> Result<CentralityScores> {
        Ok(load_centrality(g))
    }
}
