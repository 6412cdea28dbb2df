//! Acceptance criteria A1 to A11. Runs without the libtest harness so every
//! criterion prints exactly one line; the process fails if any criterion
//! fails.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use rand::seq::index::sample;
use rand::Rng;
use turing_net::bibliometrics::h_index;
use turing_net::centrality::{
    betweenness_centrality, closeness_centrality, eigenvector_centrality, load_centrality, load_pass, BetweennessMode,
};
use turing_net::config::{ConfigLayer, RunConfig};
use turing_net::graph::CollabGraph;
use turing_net::stats::{kendall_tau_b, pearson, spearman, stars};
use turing_net::tn::{compute_tn, null_model, tn_distribution, NullModelConfig};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn a1_tn_matches_bfs_oracle() -> Outcome {
    let mut rng = rng(1);
    let start = Instant::now();
    let mut graphs = Vec::new();
    for _ in 0..100 {
        let n = rng.random_range(5..=200);
        let p = rng.random_range(0.2..4.0) / n as f64;
        let (g, adj) = random_graph(&mut rng, n, p);
        let seeds: Vec<u32> = sample(&mut rng, n, 5).into_iter().map(|s| s as u32).collect();
        graphs.push((g, adj, seeds));
    }
    let gen = start.elapsed();
    let start = Instant::now();
    let results: Vec<_> = graphs.iter().map(|(g, _, s)| compute_tn(g, s)).collect();
    let took = start.elapsed();
    for (i, ((_, adj, seeds), r)) in graphs.iter().zip(results).enumerate() {
        let r = r.map_err(|e| format!("graph {i}: {e}"))?;
        ensure!(r.values() == tn_oracle(adj, seeds).as_slice(), "graph {i}: TN differs from BFS oracle");
    }
    ensure!(took.as_secs_f64() < 5.0, "took {took:?}");
    Ok(format!("100 graphs exact, {:.3} s (generation {:.3} s)", took.as_secs_f64(), gen.as_secs_f64()))
}

fn a2_brandes_matches_brute_force() -> Outcome {
    let mut rng = rng(2);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let n = rng.random_range(3..=60);
        let p = rng.random_range(0.03..0.4);
        let (g, adj) = random_graph(&mut rng, n, p);
        let got = betweenness_centrality(&g, BetweennessMode::Exact).map_err(|e| e.to_string())?;
        let want = if n <= 16 { betweenness_by_enumeration(&adj) } else { betweenness_oracle(&adj) };
        for (a, b) in got.values.iter().zip(&want) {
            worst = worst.max((a - b).abs());
            ensure!((a - b).abs() <= 1e-9, "graph {i}: {a} vs {b}");
        }
    }
    let took = start.elapsed();
    ensure!(took.as_secs_f64() < 60.0, "took {took:?}");
    Ok(format!("100 graphs, worst deviation {worst:.1e}, {:.2} s", took.as_secs_f64()))
}

fn a3_load_matches_simulation() -> Outcome {
    let mut rng = rng(3);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = rng.random_range(3..=40);
        let p = rng.random_range(0.05..0.5);
        let (g, adj) = random_graph(&mut rng, n, p);
        let got = load_centrality(&g);
        let (want, delivered) = load_oracle(&adj);
        for (a, b) in got.values.iter().zip(&want) {
            worst = worst.max((a - b).abs());
            ensure!((a - b).abs() <= 1e-9, "graph {i}: {a} vs {b}");
        }
        for t in 0..n as u32 {
            let pass = load_pass(&g, t);
            let expect = (pass.reached - 1) as f64;
            ensure!((pass.absorbed - expect).abs() <= 1e-9, "graph {i} target {t}: absorbed {}", pass.absorbed);
        }
        // every packet the simulation sends arrives
        for (s, d) in delivered.iter().enumerate() {
            let reach = bfs_matrix(&adj, s).iter().filter(|&&x| x != INF).count() - 1;
            ensure!((d - reach as f64).abs() <= 1e-9, "graph {i} source {s}: delivered {d}");
        }
    }
    Ok(format!("50 graphs, worst deviation {worst:.1e}, flow conserved"))
}

fn a4_closeness_formula_and_complete_graphs() -> Outcome {
    let mut rng = rng(4);
    for i in 0..50 {
        let n = rng.random_range(2..=60);
        let p = rng.random_range(0.0..0.3);
        let (g, adj) = random_connected(&mut rng, n, p);
        let got = closeness_centrality(&g);
        for (a, b) in got.values.iter().zip(closeness_oracle(&adj)) {
            ensure!((a - b).abs() <= 1e-12, "graph {i}: {a} vs {b}");
        }
    }
    for n in [3usize, 5, 10, 25] {
        let edges: Vec<(u32, u32)> = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        let g = CollabGraph::from_edges(n, edges).map_err(|e| e.to_string())?;
        let c = closeness_centrality(&g);
        ensure!(c.values.iter().all(|&v| (v - 1.0).abs() <= 1e-12), "K{n} closeness {:?}", c.values);
        let b = betweenness_centrality(&g, BetweennessMode::Exact).map_err(|e| e.to_string())?;
        ensure!(b.values.iter().all(|&v| v == 0.0), "K{n} betweenness {:?}", b.values);
    }
    Ok("50 graphs within 1e-12; complete graphs give 1 and 0".into())
}

fn a5_eigenvector_residual_and_cycles() -> Outcome {
    let mut rng = rng(5);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = rng.random_range(2..=100);
        let p = rng.random_range(0.0..0.15);
        let (g, adj) = random_connected(&mut rng, n, p);
        let out = eigenvector_centrality(&g, 1e-12, 100_000).map_err(|e| format!("graph {i}: {e}"))?;
        let x = &out.scores.values;
        ensure!(x.iter().all(|&v| v > 0.0), "graph {i}: non-positive entry");
        // residual of A x = lambda x computed from the adjacency matrix
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ax: Vec<f64> = (0..n)
            .map(|u| (0..n).filter(|&v| adj[u][v]).map(|v| x[v]).sum::<f64>() / norm)
            .collect();
        let lambda: f64 = ax.iter().zip(x).map(|(a, b)| a * b / norm).sum();
        let res = ax
            .iter()
            .zip(x)
            .map(|(a, b)| (a - lambda * b / norm).powi(2))
            .sum::<f64>()
            .sqrt();
        worst = worst.max(res);
        ensure!(res <= 1e-8, "graph {i}: residual {res:e}");
    }
    for n in [3usize, 4, 7, 50, 101] {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|u| (u, (u + 1) % n as u32)).collect();
        let g = CollabGraph::from_edges(n, edges).map_err(|e| e.to_string())?;
        let out = eigenvector_centrality(&g, 1e-12, 100_000).map_err(|e| e.to_string())?;
        let want = 1.0 / (n as f64).sqrt();
        ensure!(
            out.scores.values.iter().all(|v| (v - want).abs() <= 1e-10),
            "C{n}: {:?}",
            out.scores.values
        );
    }
    Ok(format!("50 graphs, worst residual {worst:.1e}; cycles uniform"))
}

fn a6_correlations() -> Outcome {
    let mut rng = rng(6);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let n = rng.random_range(5..=200);
        let levels = rng.random_range(2..=10);
        let x = tied_vector(&mut rng, n, levels);
        let y = tied_vector(&mut rng, n, levels);
        let want = kendall_oracle(&x, &y);
        match kendall_tau_b(&x, &y) {
            Ok(r) => {
                worst = worst.max((r.coefficient - want).abs());
                ensure!((r.coefficient - want).abs() <= 1e-12, "instance {i}: {} vs {want}", r.coefficient);
            }
            Err(_) => ensure!(want.is_nan(), "instance {i}: error but oracle gives {want}"),
        }
    }
    for i in 0..200 {
        let n = rng.random_range(3..=300);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1e3..1e3)).collect();
        let y: Vec<f64> = x.iter().map(|v| v * 0.3 + rng.random_range(-500.0..500.0)).collect();
        let p = pearson(&x, &y).map_err(|e| e.to_string())?.coefficient;
        ensure!(rel_close(p, pearson_oracle(&x, &y), 1e-12), "pearson instance {i}");
        let xt = tied_vector(&mut rng, n, 6);
        let yt = tied_vector(&mut rng, n, 6);
        if let Ok(s) = spearman(&xt, &yt) {
            let want = pearson_oracle(&rank_oracle(&xt), &rank_oracle(&yt));
            ensure!(rel_close(s.coefficient, want, 1e-12), "spearman instance {i}: {} vs {want}", s.coefficient);
        }
    }
    let cases = [
        (0.009, "***"),
        (0.04, "**"),
        (0.09, "*"),
        (0.2, ""),
        (0.0099, "***"),
        (0.01, "**"),
        (0.0499, "**"),
        (0.05, "*"),
        (0.0999, "*"),
        (0.1, ""),
        (0.5, ""),
    ];
    for (p, want) in cases {
        ensure!(stars(p) == want, "stars({p}) = {:?}", stars(p));
    }
    Ok(format!("kendall worst deviation {worst:.1e} over 1000 tied instances; pearson, spearman, stars ok"))
}

fn a7_h_index() -> Outcome {
    let mut rng = rng(7);
    ensure!(h_index(&[10, 8, 5, 4, 3]) == 4, "[10,8,5,4,3] gives {}", h_index(&[10, 8, 5, 4, 3]));
    for i in 0..1000 {
        let len = rng.random_range(0..60);
        let top = rng.random_range(1..200);
        let c: Vec<u64> = (0..len).map(|_| rng.random_range(0..top)).collect();
        ensure!(h_index(&c) == h_index_oracle(&c), "list {i}: {c:?}");
    }
    Ok("1000 lists match; [10,8,5,4,3] gives 4".into())
}

fn a8_null_model_reproducible() -> Outcome {
    let mut rng = rng(8);
    let (g, _) = random_graph(&mut rng, 3000, 3.0 / 3000.0);
    let cfg = NullModelConfig {
        k: 5,
        trials: 64,
        rng_seed: 2017,
        excluded: [0, 1, 2].into_iter().collect(),
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let r = pool.install(|| null_model(&g, &cfg)).unwrap();
        serde_json::to_vec(&r).unwrap()
    };
    let one = run(1);
    ensure!(one == run(1), "two single-thread runs differ");
    ensure!(one == run(8), "1 and 8 threads differ");
    Ok("64 trials bit-identical across runs and across 1/8 threads".into())
}

fn a9_pipeline_golden() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = tmp.path().join("bundle");
    let layer = ConfigLayer::load(&fixture_dir().join("synth/pipeline.toml"))
        .map_err(|e| e.to_string())?
        .overlay(ConfigLayer {
            out_dir: Some(out.clone()),
            ..Default::default()
        });
    let cfg = RunConfig::resolve(layer).map_err(|e| e.to_string())?;
    let start = Instant::now();
    turing_net::pipeline::run_pipeline(&cfg).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure!(took.as_secs_f64() < 30.0, "took {took:?}");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/synth");
    let mut n_files = 0;
    for entry in fs::read_dir(&golden).map_err(|e| e.to_string())? {
        let name = entry.map_err(|e| e.to_string())?.file_name();
        let a = fs::read(out.join(&name)).map_err(|e| format!("{name:?}: {e}"))?;
        let b = fs::read(golden.join(&name)).map_err(|e| e.to_string())?;
        ensure!(a == b, "{name:?} differs from golden");
        n_files += 1;
    }
    ensure!(fs::read_dir(&out).map_err(|e| e.to_string())?.count() == n_files, "extra output files");
    let table = fs::read_to_string(out.join("table3_correlations.csv")).map_err(|e| e.to_string())?;
    let mut rows = 0;
    for line in table.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let r: f64 = f[2].parse().map_err(|_| format!("bad row {line}"))?;
        ensure!(r < 0.0 && f[4] == "***", "{line}");
        rows += 1;
    }
    ensure!(rows == 9, "expected 3 methods x 3 indicators, got {rows} rows");
    Ok(format!("{n_files} files byte-exact in {:.2} s; all 9 TN correlations (papers, citations, h-index) negative with ***", took.as_secs_f64()))
}

/// Preferential attachment with `m` links per new node, topped up with
/// uniform random edges to exactly `target_edges`.
fn scale_free(rng: &mut rand_chacha::ChaCha8Rng, n: usize, m: usize, target_edges: usize) -> CollabGraph {
    let mut edges = std::collections::HashSet::new();
    let mut ends: Vec<u32> = Vec::new();
    for u in 0..=m as u32 {
        for v in u + 1..=m as u32 {
            edges.insert((u, v));
            ends.extend([u, v]);
        }
    }
    for v in (m + 1) as u32..n as u32 {
        let mut picked = Vec::with_capacity(m);
        while picked.len() < m {
            let u = ends[rng.random_range(0..ends.len())];
            if !picked.contains(&u) {
                picked.push(u);
            }
        }
        for u in picked {
            edges.insert((u, v));
            ends.extend([u, v]);
        }
    }
    while edges.len() < target_edges {
        let u = rng.random_range(0..n as u32);
        let v = rng.random_range(0..n as u32);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    CollabGraph::from_edges(n, edges).unwrap()
}

fn a10_scale() -> Outcome {
    let mut rng = rng(10);
    let g = scale_free(&mut rng, 50_000, 6, 300_000);
    ensure!(g.n_edges() == 300_000, "generated {} edges", g.n_edges());
    let seeds: Vec<u32> = sample(&mut rng, g.n_nodes(), 5).into_iter().map(|s| s as u32).collect();
    let start = Instant::now();
    let tn = compute_tn(&g, &seeds).map_err(|e| e.to_string())?;
    let t_tn = start.elapsed().as_secs_f64();
    ensure!(tn.n_reachable() == g.n_nodes(), "graph not connected");

    let pool = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    let start = Instant::now();
    let sampled = pool
        .install(|| betweenness_centrality(&g, BetweennessMode::Sampled { samples: 2000, seed: 7 }))
        .map_err(|e| e.to_string())?;
    let t_sampled = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let exact = pool
        .install(|| betweenness_centrality(&g, BetweennessMode::Exact))
        .map_err(|e| e.to_string())?;
    let t_exact = start.elapsed().as_secs_f64();

    let mut order: Vec<usize> = (0..g.n_nodes()).collect();
    order.sort_by(|&a, &b| exact.values[b].total_cmp(&exact.values[a]));
    let errors: Vec<f64> = order[..10]
        .iter()
        .map(|&v| (sampled.values[v] - exact.values[v]).abs() / exact.values[v])
        .collect();
    let worst = errors.iter().copied().fold(0.0, f64::max);
    let mean_err = errors.iter().sum::<f64>() / errors.len() as f64;
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let detail = format!(
        "TN {t_tn:.3} s; exact betweenness {t_exact:.1} s; sampled (2000 pivots) {t_sampled:.1} s, \
         top-10 relative error worst {:.2}% (mean {:.2}%); 8-thread pool on {cores} core(s)",
        worst * 100.0,
        mean_err * 100.0
    );
    ensure!(t_tn < 1.0, "{detail}");
    ensure!(t_exact < 600.0, "{detail}");
    ensure!(t_sampled < 30.0, "{detail}");
    ensure!(worst < 0.05, "{detail}");
    Ok(detail)
}

fn a11_histogram_shape() -> Outcome {
    let path = fixture_dir().join("synth");
    let layer = ConfigLayer::load(&path.join("pipeline.toml")).map_err(|e| e.to_string())?;
    let layer = layer.overlay(ConfigLayer {
        out_dir: Some(std::env::temp_dir()),
        ..Default::default()
    });
    let cfg = RunConfig::resolve(layer).map_err(|e| e.to_string())?;
    let a = turing_net::pipeline::analyze(&cfg).map_err(|e| e.to_string())?;
    let hist: BTreeMap<u32, usize> = tn_distribution(&a.tn).histogram;
    let counts: Vec<usize> = (0..=*hist.keys().max().unwrap()).map(|t| hist.get(&t).copied().unwrap_or(0)).collect();
    let peak = (0..counts.len()).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    ensure!(
        counts[..=peak].windows(2).all(|w| w[0] <= w[1]) && counts[peak..].windows(2).all(|w| w[0] >= w[1]),
        "not unimodal: {counts:?}"
    );
    let total: usize = counts.iter().sum();
    let (best_start, best) = (0..counts.len().saturating_sub(3))
        .map(|s| (s, counts[s..s + 4].iter().sum::<usize>()))
        .max_by_key(|&(s, c)| (c, std::cmp::Reverse(s)))
        .unwrap();
    let share = best as f64 / total as f64;
    ensure!(share > 0.9, "best 4-value band holds {:.1}%", share * 100.0);
    Ok(format!(
        "unimodal with mode {peak}; TN {}..{} holds {:.1}%",
        best_start,
        best_start + 3,
        share * 100.0
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("A1", a1_tn_matches_bfs_oracle),
        ("A2", a2_brandes_matches_brute_force),
        ("A3", a3_load_matches_simulation),
        ("A4", a4_closeness_formula_and_complete_graphs),
        ("A5", a5_eigenvector_residual_and_cycles),
        ("A6", a6_correlations),
        ("A7", a7_h_index),
        ("A8", a8_null_model_reproducible),
        ("A9", a9_pipeline_golden),
        ("A10", a10_scale),
        ("A11", a11_histogram_shape),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (id, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("{id:<4} PASS  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id:<4} FAIL  {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
