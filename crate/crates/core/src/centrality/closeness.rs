use rayon::prelude::*;

use super::{CentralityMeasure, CentralityOptions, CentralityScores, Measure};
use crate::error::Result;
use crate::graph::{CollabGraph, NodeId};

pub struct Closeness;

/// `(|V|-1) / sum of distances` on a connected graph.
///
/// On a disconnected graph the sum runs over the `r` nodes reachable from `v`
/// (including `v`) and the result is scaled by `(r-1)/(n-1)`, which reduces
/// to the connected formula when `r = n`. Isolated nodes score 0.
pub fn closeness_centrality(g: &CollabGraph) -> CentralityScores {
    let n = g.n_nodes();
    let values = (0..n as NodeId)
        .into_par_iter()
        .map_init(
            || (vec![u32::MAX; n], Vec::<NodeId>::new()),
            |(dist, queue), v| {
                queue.clear();
                dist[v as usize] = 0;
                queue.push(v);
                let mut head = 0;
                let mut sum = 0u64;
                while head < queue.len() {
                    let x = queue[head];
                    head += 1;
                    let dx = dist[x as usize];
                    sum += dx as u64;
                    for &y in g.neighbors(x) {
                        if dist[y as usize] == u32::MAX {
                            dist[y as usize] = dx + 1;
                            queue.push(y);
                        }
                    }
                }
                let reached = queue.len();
                for &x in queue.iter() {
                    dist[x as usize] = u32::MAX;
                }
                if reached <= 1 || sum == 0 {
                    return 0.0;
                }
                let r1 = (reached - 1) as f64;
                (r1 / sum as f64) * (r1 / (n - 1) as f64)
            },
        )
        .collect();
    CentralityScores::new(Measure::Closeness, values)
}

impl CentralityMeasure for Closeness {
    fn measure(&self) -> Measure {
        Measure::Closeness
    }

    fn compute(&self, g: &CollabGraph, _: &CentralityOptions) -> Result<CentralityScores> {
        Ok(closeness_centrality(g))
    }
}
