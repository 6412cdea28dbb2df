use super::{CollabGraph, NodeId};

/// Distance marker for nodes no source reaches.
pub const UNREACHED: u32 = u32::MAX;

/// Multi-source BFS hop distances; unreached nodes hold [`UNREACHED`].
/// Sources must be valid node ids.
pub fn bfs_distances(g: &CollabGraph, sources: &[NodeId]) -> Vec<u32> {
    let n = g.n_nodes();
    let mut dist = vec![UNREACHED; n];
    let mut frontier = Vec::with_capacity(sources.len());
    for &s in sources {
        if dist[s as usize] == UNREACHED {
            dist[s as usize] = 0;
            frontier.push(s);
        }
    }
    let mut next = Vec::new();
    let mut level = 0u32;
    while !frontier.is_empty() {
        level += 1;
        for &v in &frontier {
            for &u in g.neighbors(v) {
                let d = &mut dist[u as usize];
                if *d == UNREACHED {
                    *d = level;
                    next.push(u);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    dist
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Components {
    /// Component id per node; ids follow the smallest node id they contain.
    pub component: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Id of the largest component; ties go to the lower id.
    pub fn largest(&self) -> Option<u32> {
        self.sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i as u32)
    }
}

pub fn connected_components(g: &CollabGraph) -> Components {
    let n = g.n_nodes();
    let mut component = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if component[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        component[start] = id;
        stack.push(start as NodeId);
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &u in g.neighbors(v) {
                if component[u as usize] == u32::MAX {
                    component[u as usize] = id;
                    stack.push(u);
                }
            }
        }
        sizes.push(size);
    }
    Components { component, sizes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_edges() {
        let g = CollabGraph::from_edges(4, [(0, 2), (1, 3)]).unwrap();
        let c = connected_components(&g);
        assert_eq!(c.component, vec![0, 1, 0, 1]);
        assert_eq!(c.sizes, vec![2, 2]);
        assert_eq!(c.largest(), Some(0));
    }

    #[test]
    fn empty_graph() {
        let g = CollabGraph::from_edges(0, []).unwrap();
        let c = connected_components(&g);
        assert!(c.component.is_empty() && c.sizes.is_empty());
        assert_eq!(c.largest(), None);
    }

    #[test]
    fn bfs_from_two_ends() {
        let g = CollabGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(bfs_distances(&g, &[0, 3]), vec![0, 1, 1, 0]);
        let g = CollabGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(bfs_distances(&g, &[0]), vec![0, 1, UNREACHED]);
    }
}
