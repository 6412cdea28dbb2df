//! Undirected coauthorship graph in CSR form.

mod cache;
mod traversal;

pub use cache::{load_graph, read_graph, save_graph, write_edge_list, write_graph, FORMAT_VERSION, MAGIC};
pub use traversal::{bfs_distances, connected_components, Components, UNREACHED};

use crate::corpus::{Paper, ScholarId};
use crate::error::{Error, Result};

pub type NodeId = u32;

/// Default cap on authors per paper for clique expansion.
pub const DEFAULT_MAX_AUTHORS: usize = 500;

/// Immutable undirected simple graph. Each node's neighbor slice is sorted
/// ascending and duplicate-free, there are no self-loops, and every edge is
/// stored in both directions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CollabGraph {
    offsets: Vec<usize>,
    adjacency: Vec<NodeId>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct BuildReport {
    pub n_nodes: usize,
    pub n_edges: usize,
    /// Papers whose author list exceeded the clique guard and contributed no
    /// edges.
    pub oversized_papers: u64,
}

impl CollabGraph {
    /// Build from an edge list over nodes `0..n_nodes`. Self-loops and
    /// repeated edges (in either orientation) are dropped.
    pub fn from_edges(n_nodes: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut arcs: Vec<(NodeId, NodeId)> = Vec::new();
        for (u, v) in edges {
            if u as usize >= n_nodes || v as usize >= n_nodes {
                return Err(Error::Argument(format!(
                    "edge ({u}, {v}) out of range for {n_nodes} nodes"
                )));
            }
            if u != v {
                arcs.push((u, v));
                arcs.push((v, u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        let mut offsets = vec![0usize; n_nodes + 1];
        for &(u, _) in &arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n_nodes {
            offsets[i + 1] += offsets[i];
        }
        let adjacency = arcs.into_iter().map(|(_, v)| v).collect();
        Ok(CollabGraph { offsets, adjacency })
    }

    /// Clique-expand every paper's author list. Papers with more than
    /// `max_authors` authors are skipped and counted.
    pub fn build(papers: &[Paper], n_scholars: usize, max_authors: usize) -> Result<(Self, BuildReport)> {
        let mut edges = Vec::new();
        let mut oversized = 0u64;
        for p in papers {
            if p.authors.len() > max_authors {
                oversized += 1;
                log::warn!(
                    "paper with {} authors exceeds clique guard of {max_authors}; no edges added",
                    p.authors.len()
                );
                continue;
            }
            for (i, &a) in p.authors.iter().enumerate() {
                for &b in &p.authors[i + 1..] {
                    edges.push(if a < b { (a, b) } else { (b, a) });
                }
            }
        }
        let g = Self::from_edges(n_scholars, edges)?;
        let report = BuildReport {
            n_nodes: g.n_nodes(),
            n_edges: g.n_edges(),
            oversized_papers: oversized,
        };
        Ok((g, report))
    }

    /// Reassemble from raw CSR arrays, checking every structural invariant.
    pub fn from_csr(offsets: Vec<usize>, adjacency: Vec<NodeId>) -> Result<Self> {
        let bad = |m: &str| Err(Error::Format(format!("graph: {m}")));
        if offsets.is_empty() || offsets[0] != 0 {
            return bad("offsets must start at 0");
        }
        if *offsets.last().unwrap() != adjacency.len() {
            return bad("offsets do not cover the adjacency array");
        }
        let n = offsets.len() - 1;
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return bad("offsets are not non-decreasing");
        }
        let g = CollabGraph { offsets, adjacency };
        for v in 0..n {
            let nb = g.neighbors(v as NodeId);
            if nb.iter().any(|&u| u as usize >= n || u as usize == v) {
                return bad("neighbor out of range or self-loop");
            }
            if nb.windows(2).any(|w| w[0] >= w[1]) {
                return bad("neighbor slice not strictly ascending");
            }
            if nb.iter().any(|&u| g.neighbors(u).binary_search(&(v as NodeId)).is_err()) {
                return bad("adjacency is not symmetric");
            }
        }
        Ok(g)
    }

    pub fn n_nodes(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.len() / 2
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn adjacency(&self) -> &[NodeId] {
        &self.adjacency
    }

    /// Panics if `v` is out of range; see [`CollabGraph::try_degree`].
    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn try_degree(&self, v: NodeId) -> Result<usize> {
        self.check(v).map(|_| self.degree(v))
    }

    pub fn try_neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        self.check(v).map(|_| self.neighbors(v))
    }

    fn check(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.n_nodes() {
            Ok(())
        } else {
            Err(Error::Argument(format!(
                "node {v} out of range for graph with {} nodes",
                self.n_nodes()
            )))
        }
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.n_nodes() as NodeId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `keep` (ascending, distinct). Node `keep[i]`
    /// becomes node `i`.
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> Result<CollabGraph> {
        if keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument("subgraph node list must be strictly ascending".into()));
        }
        if let Some(&last) = keep.last() {
            self.check(last)?;
        }
        let mut remap = vec![NodeId::MAX; self.n_nodes()];
        for (i, &v) in keep.iter().enumerate() {
            remap[v as usize] = i as NodeId;
        }
        let mut offsets = Vec::with_capacity(keep.len() + 1);
        let mut adjacency = Vec::new();
        offsets.push(0);
        for &v in keep {
            // ascending old ids map to ascending new ids, so order is kept
            adjacency.extend(
                self.neighbors(v)
                    .iter()
                    .map(|&u| remap[u as usize])
                    .filter(|&u| u != NodeId::MAX),
            );
            offsets.push(adjacency.len());
        }
        Ok(CollabGraph { offsets, adjacency })
    }

    /// Nodes within `radius` hops of any seed, ascending.
    pub fn k_hop_nodes(&self, seeds: &[ScholarId], radius: u32) -> Result<Vec<NodeId>> {
        for &s in seeds {
            self.check(s)?;
        }
        let dist = bfs_distances(self, seeds);
        Ok((0..self.n_nodes() as NodeId)
            .filter(|&v| dist[v as usize] <= radius)
            .collect())
    }
}
