//! Random inputs and slow reference implementations shared by the test
//! targets. The references deliberately avoid the library's algorithms:
//! distances come from Floyd-Warshall, path counts from a distance-indexed
//! recurrence, load from routing each ordered pair separately.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turing_net::graph::CollabGraph;

pub const INF: u32 = u32::MAX;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi style graph with `n` nodes and edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> (CollabGraph, Vec<Vec<bool>>) {
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                adj[u][v] = true;
                adj[v][u] = true;
                edges.push((u as u32, v as u32));
            }
        }
    }
    (CollabGraph::from_edges(n, edges).unwrap(), adj)
}

/// Random spanning tree plus extra random edges, so always connected.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> (CollabGraph, Vec<Vec<bool>>) {
    let mut adj = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        adj[u][v] = true;
        adj[v][u] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    (graph_from_matrix(&adj), adj)
}

pub fn graph_from_matrix(adj: &[Vec<bool>]) -> CollabGraph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u][v]).map(move |v| (u as u32, v as u32)));
    CollabGraph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
}

pub fn floyd_warshall(adj: &[Vec<bool>]) -> Vec<Vec<u32>> {
    let n = adj.len();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if adj[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// `sigma[s][t]`: number of shortest s-t paths, by increasing distance.
pub fn path_counts(adj: &[Vec<bool>], d: &[Vec<u32>]) -> Vec<Vec<f64>> {
    let n = adj.len();
    let mut sigma = vec![vec![0.0; n]; n];
    for s in 0..n {
        let mut by_dist: Vec<usize> = (0..n).filter(|&t| d[s][t] != INF).collect();
        by_dist.sort_by_key(|&t| d[s][t]);
        for &t in &by_dist {
            sigma[s][t] = if t == s {
                1.0
            } else {
                (0..n)
                    .filter(|&u| adj[u][t] && d[s][u] != INF && d[s][u] + 1 == d[s][t])
                    .map(|u| sigma[s][u])
                    .sum()
            };
        }
    }
    sigma
}

/// Betweenness over unordered pairs from all-pairs distances and path counts.
pub fn betweenness_oracle(adj: &[Vec<bool>]) -> Vec<f64> {
    let n = adj.len();
    let d = floyd_warshall(adj);
    let sigma = path_counts(adj, &d);
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] == INF {
                continue;
            }
            for v in 0..n {
                if v != s && v != t && d[s][v] != INF && d[v][t] != INF && d[s][v] + d[v][t] == d[s][t] {
                    b[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
                }
            }
        }
    }
    b
}

/// Enumerate every shortest path explicitly (small graphs only).
pub fn betweenness_by_enumeration(adj: &[Vec<bool>]) -> Vec<f64> {
    let n = adj.len();
    let d = floyd_warshall(adj);
    let mut b = vec![0.0; n];
    fn walk(adj: &[Vec<bool>], d: &[Vec<u32>], t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for w in 0..adj.len() {
            if adj[v][w] && d[w][t] != INF && d[w][t] + 1 == d[v][t] {
                path.push(w);
                walk(adj, d, t, path, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] == INF {
                continue;
            }
            let mut paths = Vec::new();
            walk(adj, &d, t, &mut vec![s], &mut paths);
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    b[v] += 1.0 / total;
                }
            }
        }
    }
    b
}

/// Route one packet per ordered pair `(s, t)`, splitting evenly over the
/// neighbors one step closer to `t`. Returns the load forwarded by each
/// intermediate node, and for every source the total amount delivered.
pub fn load_oracle(adj: &[Vec<bool>]) -> (Vec<f64>, Vec<f64>) {
    let n = adj.len();
    let d = floyd_warshall(adj);
    let mut load = vec![0.0; n];
    let mut delivered = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || d[s][t] == INF {
                continue;
            }
            let mut packet = vec![0.0; n];
            packet[s] = 1.0;
            // visit nodes from far to near
            let mut nodes: Vec<usize> = (0..n).filter(|&v| d[v][t] != INF && d[v][t] <= d[s][t]).collect();
            nodes.sort_by_key(|&v| std::cmp::Reverse(d[v][t]));
            for &v in &nodes {
                if v == t || packet[v] == 0.0 {
                    continue;
                }
                if v != s {
                    load[v] += packet[v];
                }
                let next: Vec<usize> = (0..n)
                    .filter(|&u| adj[v][u] && d[u][t] != INF && d[u][t] + 1 == d[v][t])
                    .collect();
                let share = packet[v] / next.len() as f64;
                for u in next {
                    packet[u] += share;
                }
            }
            delivered[s] += packet[t];
        }
    }
    (load, delivered)
}

/// BFS from a single source on an adjacency matrix.
pub fn bfs_matrix(adj: &[Vec<bool>], s: usize) -> Vec<u32> {
    let n = adj.len();
    let mut d = vec![INF; n];
    d[s] = 0;
    let mut q = std::collections::VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for w in 0..n {
            if adj[v][w] && d[w] == INF {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Elementwise minimum of single-source BFS runs.
pub fn tn_oracle(adj: &[Vec<bool>], seeds: &[u32]) -> Vec<Option<u32>> {
    let n = adj.len();
    let mut best = vec![INF; n];
    for &s in seeds {
        for (b, d) in best.iter_mut().zip(bfs_matrix(adj, s as usize)) {
            *b = (*b).min(d);
        }
    }
    best.into_iter().map(|d| (d != INF).then_some(d)).collect()
}

/// `(r - 1) / sum d * (r - 1) / (n - 1)` over the `r` nodes reachable from
/// `v`; 0 for isolated nodes.
pub fn closeness_oracle(adj: &[Vec<bool>]) -> Vec<f64> {
    let n = adj.len();
    (0..n)
        .map(|v| {
            let d = bfs_matrix(adj, v);
            let reach: Vec<u32> = d.into_iter().filter(|&x| x != INF).collect();
            let r = reach.len() as f64;
            let total: u32 = reach.iter().sum();
            if total == 0 {
                0.0
            } else {
                (r - 1.0) / total as f64 * (r - 1.0) / (n as f64 - 1.0)
            }
        })
        .collect()
}

/// Tau-b from explicit concordant/discordant/tie counts over all pairs.
pub fn kendall_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let (mut c, mut dis, mut tx, mut ty) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i].partial_cmp(&x[j]).unwrap();
            let dy = y[i].partial_cmp(&y[j]).unwrap();
            if dx.is_eq() && dy.is_eq() {
                continue;
            } else if dx.is_eq() {
                tx += 1;
            } else if dy.is_eq() {
                ty += 1;
            } else if dx == dy {
                c += 1;
            } else {
                dis += 1;
            }
        }
    }
    (c - dis) as f64 / (((c + dis + tx) as f64) * ((c + dis + ty) as f64)).sqrt()
}

/// Two-pass sample correlation.
pub fn pearson_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx.sqrt() * vy.sqrt())
}

/// Ranks by counting: rank = #smaller + (#equal + 1) / 2.
pub fn rank_oracle(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&a| {
            let less = x.iter().filter(|&&b| b < a).count() as f64;
            let eq = x.iter().filter(|&&b| b == a).count() as f64;
            less + (eq + 1.0) / 2.0
        })
        .collect()
}

/// Try every candidate h.
pub fn h_index_oracle(c: &[u64]) -> u32 {
    (0..=c.len())
        .filter(|&h| c.iter().filter(|&&x| x >= h as u64).count() >= h)
        .max()
        .unwrap() as u32
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Small integer-valued vectors, so ties are frequent.
pub fn tied_vector(rng: &mut ChaCha8Rng, n: usize, levels: u32) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0..levels) as f64).collect()
}

pub fn fixture_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}
