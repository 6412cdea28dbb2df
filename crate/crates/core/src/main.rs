use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use turing_net::centrality::{
    CentralityOptions, Registry, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE,
};
use turing_net::config::{ConfigLayer, InputFormat, RunConfig};
use turing_net::corpus::{jsonl::write_jsonl, load_laureates, resolve_authors, ScholarTable};
use turing_net::error::{Error, Result};
use turing_net::graph::{load_graph, save_graph, write_edge_list, CollabGraph, DEFAULT_MAX_AUTHORS};
use turing_net::pipeline::{self, hash_bytes, read_corpus};
use turing_net::report;
use turing_net::stats::{correlate_tn, CorrelationMethod, Indicator, MethodRegistry};
use turing_net::tn::{compute_tn, null_model, tn_distribution, NullModelConfig, TnResult, DEFAULT_TRIALS};

/// Log verbosity is read from `TNET_LOG` (e.g. `TNET_LOG=info`).
#[derive(Parser)]
#[command(name = "tnet", version, about = "Coauthorship network analysis around a laureate seed set")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a corpus into normalized JSON lines, a scholar table and a skip report.
    Ingest {
        #[arg(long)]
        format: InputFormat,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Collaboration graph operations.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Turing Number computations.
    Tn {
        #[command(subcommand)]
        command: TnCommand,
    },
    /// Compute centrality measures on a cached graph.
    Centrality {
        #[arg(long)]
        graph: PathBuf,
        /// Measure name; repeat for several (default: all).
        #[arg(long = "measure")]
        measures: Vec<String>,
        /// Sample this many betweenness pivots instead of all sources.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Correlation analysis.
    Stats {
        #[command(subcommand)]
        command: StatsCommand,
    },
    /// Verify a report bundle against its manifest and print a summary.
    Report {
        bundle: PathBuf,
    },
    /// Run every stage and write the full report bundle.
    Pipeline(PipelineArgs),
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Build the coauthorship graph from a JSON-lines corpus.
    Build {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_AUTHORS)]
        max_authors: usize,
        /// Also write a plain `u v` edge list, one edge per line with u < v.
        #[arg(long)]
        edges: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TnCommand {
    /// Distance of every scholar to the nearest laureate.
    Compute {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        laureates: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// TN distributions from random seed sets of the laureate set's size.
    NullModel {
        #[arg(long)]
        graph: PathBuf,
        /// Seeds per trial (default: number of laureates).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        laureates: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Never draw the laureates as random seeds.
        #[arg(long)]
        exclude_seeds: bool,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Correlate TN with indicator columns.
    Correlate {
        /// A `tn.csv` file.
        #[arg(long)]
        tn: PathBuf,
        /// CSV with a `scholar_id` column; empty cells are missing values.
        #[arg(long)]
        indicators: PathBuf,
        /// Indicator columns to use (default: every other column).
        #[arg(long = "column")]
        columns: Vec<String>,
        /// Method name; repeat for several (default: all).
        #[arg(long = "method")]
        methods: Vec<String>,
        /// Drop TN = 0 scholars.
        #[arg(long)]
        exclude_laureates: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct PipelineArgs {
    /// Key-value TOML file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    format: Option<InputFormat>,
    #[arg(long)]
    laureates: Option<PathBuf>,
    #[arg(long)]
    geocode: Option<PathBuf>,
    #[arg(long)]
    affiliations: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    max_authors: Option<usize>,
    /// Keep only scholars within this many hops of a laureate.
    #[arg(long)]
    radius: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    rng_seed: Option<u64>,
    #[arg(long)]
    exclude_seeds: bool,
    #[arg(long = "measure")]
    measures: Vec<String>,
    #[arg(long)]
    betweenness_samples: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// `mean` or `median` of ln(centrality) per TN.
    #[arg(long)]
    bucket_statistic: Option<String>,
    #[arg(long = "indicator")]
    indicators: Vec<String>,
    #[arg(long = "method")]
    methods: Vec<String>,
    #[arg(long)]
    exclude_laureates: bool,
    #[arg(long)]
    top_k: Option<usize>,
}

impl PipelineArgs {
    fn into_layer(self) -> ConfigLayer {
        let list = |v: Vec<String>| (!v.is_empty()).then_some(v);
        let flag = |b: bool| b.then_some(true);
        ConfigLayer {
            input: self.input,
            format: self.format,
            laureates: self.laureates,
            geocode: self.geocode,
            affiliations: self.affiliations,
            out_dir: self.out_dir,
            max_authors: self.max_authors,
            radius: self.radius,
            k: self.k,
            trials: self.trials,
            rng_seed: self.rng_seed,
            exclude_seeds: flag(self.exclude_seeds),
            measures: list(self.measures),
            betweenness_samples: self.betweenness_samples,
            tolerance: self.tolerance,
            max_iters: self.max_iters,
            bucket_statistic: self.bucket_statistic,
            indicators: list(self.indicators),
            methods: list(self.methods),
            exclude_laureates: flag(self.exclude_laureates),
            top_k: self.top_k,
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

fn write_out(path: &Path, render: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    render(&mut buf)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

fn scholars_from_corpus(corpus: &Path) -> Result<(ScholarTable, Vec<turing_net::corpus::Paper>)> {
    let (records, _) = read_corpus(corpus, InputFormat::Jsonl)?;
    Ok(resolve_authors(records))
}

fn ingest(format: InputFormat, input: &Path, out_dir: &Path) -> Result<()> {
    let (records, skips) = read_corpus(input, format)?;
    let mut corpus = Vec::new();
    write_jsonl(&mut corpus, &records).map_err(|e| Error::io(out_dir, e))?;
    let (table, papers) = resolve_authors(records);
    let mut files = BTreeMap::new();
    files.insert("corpus.jsonl".to_string(), corpus);
    let mut buf = Vec::new();
    table.write_csv(&mut buf).map_err(|e| Error::Csv(e.to_string()))?;
    files.insert("scholars.csv".to_string(), buf);
    let mut buf = Vec::new();
    report::write_json(&mut buf, &skips)?;
    files.insert("skip_report.json".to_string(), buf);
    pipeline::write_files(out_dir, &files)?;
    eprintln!(
        "ingested {} papers, {} scholars; skipped {} ({} without authors, {} with invalid year)",
        papers.len(),
        table.len(),
        skips.skipped(),
        skips.no_authors,
        skips.invalid_year
    );
    Ok(())
}

fn tn_compute(graph: &Path, corpus: &Path, laureates: &Path, out_dir: &Path) -> Result<()> {
    let g = load_graph(graph)?;
    let (mut table, _) = scholars_from_corpus(corpus)?;
    check_sizes(&g, &table)?;
    let seeds: Vec<u32> = load_laureates(open(laureates)?, &mut table)?.into_iter().collect();
    let tn = compute_tn(&g, &seeds)?;
    let dist = tn_distribution(&tn);
    write_out(&out_dir.join("tn.csv"), |b| report::write_tn_csv(b, &table, &tn))?;
    write_out(&out_dir.join("tn_summary.json"), |b| {
        report::write_tn_summary(b, &tn, &dist, None)
    })
}

fn check_sizes(g: &CollabGraph, table: &ScholarTable) -> Result<()> {
    if g.n_nodes() != table.len() {
        return Err(Error::Validation(format!(
            "graph has {} nodes but the corpus has {} scholars",
            g.n_nodes(),
            table.len()
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn tn_null_model(
    graph: &Path,
    k: Option<usize>,
    corpus: Option<&Path>,
    laureates: Option<&Path>,
    trials: usize,
    rng_seed: u64,
    exclude_seeds: bool,
    out_dir: &Path,
) -> Result<()> {
    let g = load_graph(graph)?;
    let seeds = match (corpus, laureates) {
        (Some(c), Some(l)) => {
            let (mut table, _) = scholars_from_corpus(c)?;
            check_sizes(&g, &table)?;
            load_laureates(open(l)?, &mut table)?
        }
        (None, None) => Default::default(),
        _ => return Err(Error::Argument("--corpus and --laureates go together".into())),
    };
    if exclude_seeds && seeds.is_empty() {
        return Err(Error::Argument("--exclude-seeds needs --corpus and --laureates".into()));
    }
    let k = match k {
        Some(k) => k,
        None if !seeds.is_empty() => seeds.len(),
        None => return Err(Error::Argument("give --k or a laureate list".into())),
    };
    let cfg = NullModelConfig {
        k,
        trials,
        rng_seed,
        excluded: if exclude_seeds { seeds } else { Default::default() },
    };
    let nm = null_model(&g, &cfg)?;
    write_out(&out_dir.join("null_model.csv"), |b| report::write_null_model_csv(b, &nm))?;
    write_out(&out_dir.join("null_model_mean.csv"), |b| {
        report::write_null_model_mean_csv(b, &nm)
    })?;
    write_out(&out_dir.join("null_model.json"), |b| report::write_json(b, &nm))
}

fn centrality(graph: &Path, measures: &[String], opts: &CentralityOptions, out_dir: &Path) -> Result<()> {
    let registry = Registry::default();
    let names: Vec<String> = if measures.is_empty() {
        registry.names().map(String::from).collect()
    } else {
        measures.to_vec()
    };
    let selected = names
        .iter()
        .map(|n| registry.get(n))
        .collect::<Result<Vec<_>>>()?;
    let g = load_graph(graph)?;
    for m in selected {
        let scores = m.compute(&g, opts)?;
        let name = m.name();
        write_out(&out_dir.join(format!("centrality_{name}.csv")), |b| {
            report::write_centrality_csv(b, &scores)
        })?;
        write_out(&out_dir.join(format!("centrality_{name}.json")), |b| {
            report::write_centrality_params(b, &scores)
        })?;
    }
    Ok(())
}

fn read_tn_csv(path: &Path) -> Result<TnResult> {
    let mut rdr = csv::Reader::from_reader(open(path)?);
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Csv(format!("{}: {e}", path.display())))?;
        let bad = || Error::Csv(format!("{}: bad row {}", path.display(), i + 2));
        let id: usize = rec.get(0).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if id != i {
            return Err(bad());
        }
        let tn = match rec.get(2) {
            Some("") => None,
            Some(s) => Some(s.parse::<u32>().map_err(|_| bad())?),
            None => return Err(bad()),
        };
        values.push(tn);
    }
    Ok(TnResult::from_values(values))
}

fn read_indicators(path: &Path, n: usize, columns: &[String]) -> Result<Vec<Indicator>> {
    let mut rdr = csv::Reader::from_reader(open(path)?);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Csv(format!("{}: {e}", path.display())))?
        .clone();
    let id_col = headers
        .iter()
        .position(|h| h == "scholar_id")
        .ok_or_else(|| Error::Csv(format!("{}: no scholar_id column", path.display())))?;
    let wanted: Vec<(usize, String)> = if columns.is_empty() {
        headers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id_col)
            .map(|(i, h)| (i, h.to_string()))
            .collect()
    } else {
        columns
            .iter()
            .map(|c| {
                headers
                    .iter()
                    .position(|h| h == c)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| Error::Argument(format!("no column {c:?} in {}", path.display())))
            })
            .collect::<Result<_>>()?
    };
    let mut out: Vec<Indicator> = wanted
        .iter()
        .map(|(_, name)| Indicator::new(name.clone(), vec![None; n]))
        .collect();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Csv(format!("{}: {e}", path.display())))?;
        let bad = |what: &str| Error::Csv(format!("{}: row {}: {what}", path.display(), row + 2));
        let id: usize = rec
            .get(id_col)
            .and_then(|s| s.parse().ok())
            .filter(|&id| id < n)
            .ok_or_else(|| bad("scholar_id missing or out of range"))?;
        for (slot, (col, _)) in out.iter_mut().zip(&wanted) {
            let cell = rec.get(*col).unwrap_or("");
            if !cell.is_empty() {
                slot.values[id] = Some(cell.parse().map_err(|_| bad("non-numeric value"))?);
            }
        }
    }
    Ok(out)
}

fn stats_correlate(
    tn: &Path,
    indicators: &Path,
    columns: &[String],
    methods: &[String],
    exclude_laureates: bool,
    out: &Path,
) -> Result<()> {
    let tn = read_tn_csv(tn)?;
    let inds = read_indicators(indicators, tn.len(), columns)?;
    let registry = MethodRegistry::default();
    let names: Vec<String> = if methods.is_empty() {
        ["pearson", "spearman", "kendall"].map(String::from).to_vec()
    } else {
        methods.to_vec()
    };
    let selected = names
        .iter()
        .map(|n| registry.get(n))
        .collect::<Result<Vec<&dyn CorrelationMethod>>>()?;
    let rows = correlate_tn(&tn, &inds, &selected, exclude_laureates)?;
    write_out(out, |b| report::write_correlations(b, &rows))
}

fn verify_report(bundle: &Path) -> Result<()> {
    let manifest_path = bundle.join("manifest.json");
    let text = fs::read_to_string(&manifest_path).map_err(|e| Error::io(&manifest_path, e))?;
    let manifest: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Json {
        line: e.line(),
        message: e.to_string(),
    })?;
    let outputs = manifest["outputs"]
        .as_object()
        .ok_or_else(|| Error::Format("manifest has no outputs".into()))?;
    let mut bad = Vec::new();
    for (name, hash) in outputs {
        let p = bundle.join(name);
        let bytes = fs::read(&p).map_err(|e| Error::io(&p, e))?;
        if Some(hash_bytes(&bytes).as_str()) != hash.as_str() {
            bad.push(name.clone());
        }
    }
    if !bad.is_empty() {
        return Err(Error::Format(format!("files differ from manifest: {}", bad.join(", "))));
    }
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let w = |e: std::io::Error| Error::io("<stdout>", e);
    writeln!(
        out,
        "{} {}: {} files verified",
        manifest["tool"].as_str().unwrap_or("?"),
        manifest["tool_version"].as_str().unwrap_or("?"),
        outputs.len()
    )
    .map_err(w)?;
    for name in ["tn_summary.json", "table3_correlations.csv"] {
        if outputs.contains_key(name) {
            let p = bundle.join(name);
            let body = fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?;
            writeln!(out, "\n== {name}\n{}", body.trim_end()).map_err(w)?;
        }
    }
    out.flush().map_err(w)
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Argument(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Ingest {
            format,
            input,
            out_dir,
        } => ingest(format, &input, &out_dir),
        Command::Graph {
            command:
                GraphCommand::Build {
                    corpus,
                    out,
                    max_authors,
                    edges,
                },
        } => {
            let (table, papers) = scholars_from_corpus(&corpus)?;
            let (g, rep) = CollabGraph::build(&papers, table.len(), max_authors)?;
            save_graph(&g, &out)?;
            if let Some(e) = edges {
                let mut buf = Vec::new();
                write_edge_list(&g, &mut buf).map_err(|err| Error::io(&e, err))?;
                write_out(&e, |b| {
                    b.extend_from_slice(&buf);
                    Ok(())
                })?;
            }
            eprintln!(
                "graph: {} nodes, {} edges, {} oversized papers skipped",
                rep.n_nodes, rep.n_edges, rep.oversized_papers
            );
            Ok(())
        }
        Command::Tn {
            command:
                TnCommand::Compute {
                    graph,
                    corpus,
                    laureates,
                    out_dir,
                },
        } => tn_compute(&graph, &corpus, &laureates, &out_dir),
        Command::Tn {
            command:
                TnCommand::NullModel {
                    graph,
                    k,
                    corpus,
                    laureates,
                    trials,
                    rng_seed,
                    exclude_seeds,
                    out_dir,
                },
        } => tn_null_model(
            &graph,
            k,
            corpus.as_deref(),
            laureates.as_deref(),
            trials,
            rng_seed,
            exclude_seeds,
            &out_dir,
        ),
        Command::Centrality {
            graph,
            measures,
            samples,
            rng_seed,
            tolerance,
            max_iters,
            out_dir,
        } => {
            let opts = CentralityOptions {
                betweenness_samples: samples,
                sample_seed: rng_seed,
                tolerance,
                max_iters,
            };
            centrality(&graph, &measures, &opts, &out_dir)
        }
        Command::Stats {
            command:
                StatsCommand::Correlate {
                    tn,
                    indicators,
                    columns,
                    methods,
                    exclude_laureates,
                    out,
                },
        } => stats_correlate(&tn, &indicators, &columns, &methods, exclude_laureates, &out),
        Command::Report { bundle } => verify_report(&bundle),
        Command::Pipeline(args) => {
            let file = match &args.config {
                Some(p) => ConfigLayer::load(p)?,
                None => ConfigLayer::default(),
            };
            let cfg = RunConfig::resolve(file.overlay(args.into_layer()))?;
            let m = pipeline::run_pipeline(&cfg)?;
            eprintln!(
                "wrote {} files to {} (config {})",
                m.outputs.len() + 1,
                cfg.out_dir.display(),
                &m.config_hash[..12]
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TNET_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
