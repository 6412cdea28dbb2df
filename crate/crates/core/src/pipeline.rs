//! End-to-end run: corpus → scholars → graph → TN → null model →
//! centralities → bibliometrics → correlations → report bundle.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bibliometrics::{
    country_table, geographic_distribution, metrics_by_tn, scholar_metrics, CountryStats, GeoRow,
    ScholarMetrics, TnBucketMetrics,
};
use crate::centrality::{
    centrality_by_tn, CentralityOptions, CentralityScores, Registry, TnBucketCentrality,
};
use crate::config::{InputFormat, RunConfig};
use crate::corpus::{
    attach_affiliations, load_affiliations, load_laureates, resolve_authors, AffiliationReport,
    DblpReader, GeocodeTable, JsonlReader, PaperRecord, ScholarId, ScholarTable, SkipReport,
};
use crate::error::{Error, Result};
use crate::graph::{BuildReport, CollabGraph, NodeId};
use crate::report;
use crate::stats::{correlate_tn, CorrelationMethod, CorrelationRow, Indicator, MethodRegistry};
use crate::tn::{
    compute_tn, null_model, tn_distribution, NullModelConfig, NullModelResult, TnDistribution,
    TnResult,
};

/// Parse errors reported individually before the rest are summarized.
pub const MAX_REPORTED_ERRORS: usize = 10;

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

/// Read every record of a corpus file. A JSON-lines file is read to the end
/// and all bad lines are reported together (the first ten in detail); an
/// XML error stops at the first offending offset.
pub fn read_corpus(path: &Path, format: InputFormat) -> Result<(Vec<PaperRecord>, SkipReport)> {
    let input = open(path)?;
    match format {
        InputFormat::Dblp => {
            let mut reader = DblpReader::new(input);
            let records = reader.by_ref().collect::<Result<Vec<_>>>()?;
            Ok((records, reader.skip_report()))
        }
        InputFormat::Jsonl => {
            let mut reader = JsonlReader::new(input);
            let mut records = Vec::new();
            let mut errors = Vec::new();
            for item in reader.by_ref() {
                match item {
                    Ok(r) => records.push(r),
                    Err(Error::Io { path, source }) => return Err(Error::Io { path, source }),
                    Err(e) => errors.push(e.to_string()),
                }
            }
            if !errors.is_empty() {
                let shown = errors.iter().take(MAX_REPORTED_ERRORS).cloned().collect::<Vec<_>>();
                let mut msg = format!(
                    "{} malformed line(s) in {}:\n  {}",
                    errors.len(),
                    path.display(),
                    shown.join("\n  ")
                );
                if errors.len() > MAX_REPORTED_ERRORS {
                    msg.push_str(&format!("\n  ... and {} more", errors.len() - MAX_REPORTED_ERRORS));
                }
                return Err(Error::Parse(msg));
            }
            Ok((records, reader.skip_report()))
        }
    }
}

/// SHA-256 of a file's bytes, hex encoded.
pub fn hash_file(path: &Path) -> Result<String> {
    let mut h = Sha256::new();
    std::io::copy(&mut open(path)?, &mut h).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(h.finalize()))
}

pub fn hash_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Everything computed by a run, before anything is written.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub skips: SkipReport,
    pub build: BuildReport,
    pub affiliations: Option<AffiliationReport>,
    pub table: ScholarTable,
    pub graph: CollabGraph,
    pub tn: TnResult,
    pub distribution: TnDistribution,
    pub null_model: NullModelResult,
    pub centralities: Vec<CentralityScores>,
    pub metrics: Vec<ScholarMetrics>,
    pub fig2: Vec<TnBucketMetrics>,
    pub countries: Vec<CountryStats>,
    pub geography: Vec<GeoRow>,
    pub correlations: Vec<CorrelationRow>,
    pub by_tn: Vec<(&'static str, Vec<TnBucketCentrality>)>,
}

fn indicator_for(name: &str, metrics: &[ScholarMetrics], centralities: &[CentralityScores]) -> Indicator {
    let values = match name {
        "papers" => metrics.iter().map(|m| Some(m.n_papers as f64)).collect(),
        "citations" => metrics.iter().map(|m| Some(m.n_citations as f64)).collect(),
        "h_index" => metrics.iter().map(|m| m.h_index.map(f64::from)).collect(),
        measure => centralities
            .iter()
            .find(|c| c.measure.name() == measure)
            .map(|c| c.values.iter().map(|&v| Some(v)).collect())
            .expect("indicator validated against computed measures"),
    };
    Indicator::new(name, values)
}

/// Run every analysis stage in memory.
pub fn analyze(cfg: &RunConfig) -> Result<Analysis> {
    let s = &cfg.settings;
    log::info!("reading corpus {}", cfg.input.display());
    let (records, skips) = read_corpus(&cfg.input, cfg.format)?;
    let (mut table, papers) = resolve_authors(records);
    log::info!("{} papers, {} scholars", papers.len(), table.len());

    let affiliations = match (&cfg.geocode, &cfg.affiliations) {
        (Some(geo), Some(aff)) => {
            let geocoder = GeocodeTable::from_csv(open(geo)?)?;
            let aff = load_affiliations(open(aff)?)?;
            let rep = attach_affiliations(&mut table, &aff, &geocoder);
            if rep.missing() > 0 {
                log::warn!(
                    "{} scholar(s) without a geocoded affiliation ({} unmatched, {} absent)",
                    rep.missing(),
                    rep.unmatched,
                    rep.no_affiliation
                );
            }
            Some(rep)
        }
        _ => None,
    };
    let laureates = load_laureates(open(&cfg.laureates)?, &mut table)?;
    let mut metrics = scholar_metrics(table.len(), &papers);
    let (mut graph, build) = CollabGraph::build(&papers, table.len(), s.max_authors)?;
    drop(papers);
    let mut seeds: Vec<NodeId> = laureates.iter().copied().collect();

    if let Some(radius) = s.radius {
        let keep = graph.k_hop_nodes(&seeds, radius)?;
        log::info!("restricting to {} scholars within {radius} hops", keep.len());
        graph = graph.induced_subgraph(&keep)?;
        table = table.subset(&keep);
        metrics = keep
            .iter()
            .enumerate()
            .map(|(new, &old)| ScholarMetrics {
                scholar_id: new as ScholarId,
                ..metrics[old as usize].clone()
            })
            .collect();
        seeds = (0..table.len() as NodeId)
            .filter(|&v| table.profiles()[v as usize].is_laureate)
            .collect();
    }

    let tn = compute_tn(&graph, &seeds)?;
    let distribution = tn_distribution(&tn);

    let null_cfg = NullModelConfig {
        k: s.k.unwrap_or(seeds.len()),
        trials: s.trials,
        rng_seed: s.rng_seed,
        excluded: if s.exclude_seeds {
            seeds.iter().copied().collect()
        } else {
            Default::default()
        },
    };
    log::info!("null model: {} trials of {} seeds", null_cfg.trials, null_cfg.k);
    let null_model = null_model(&graph, &null_cfg)?;

    let registry = Registry::default();
    let opts = CentralityOptions {
        betweenness_samples: s.betweenness_samples,
        sample_seed: s.rng_seed,
        tolerance: s.tolerance,
        max_iters: s.max_iters,
    };
    let mut centralities = Vec::with_capacity(s.measures.len());
    for m in &s.measures {
        log::info!("computing {m} centrality");
        centralities.push(registry.get(m.name())?.compute(&graph, &opts)?);
    }

    let fig2 = metrics_by_tn(&metrics, &tn)?;
    let countries = country_table(&table, &metrics, &tn, s.top_k)?;
    let geography = geographic_distribution(&table, &tn)?;

    let indicators: Vec<Indicator> = s
        .indicators
        .iter()
        .map(|name| indicator_for(name, &metrics, &centralities))
        .collect();
    let method_registry = MethodRegistry::default();
    let methods = s
        .methods
        .iter()
        .map(|m| method_registry.get(m.name()))
        .collect::<Result<Vec<&dyn CorrelationMethod>>>()?;
    let correlations = correlate_tn(&tn, &indicators, &methods, s.exclude_laureates)?;

    let by_tn = centralities
        .iter()
        .map(|c| Ok((c.measure.name(), centrality_by_tn(c, &tn, s.bucket_statistic)?)))
        .collect::<Result<Vec<_>>>()?;

    Ok(Analysis {
        skips,
        build,
        affiliations,
        table,
        graph,
        tn,
        distribution,
        null_model,
        centralities,
        metrics,
        fig2,
        countries,
        geography,
        correlations,
        by_tn,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub tool_version: &'static str,
    /// Hash over every setting and every input file's content.
    pub config_hash: String,
    pub corpus_hash: String,
    pub rng_seed: u64,
    pub inputs: BTreeMap<&'static str, String>,
    pub outputs: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    skipped: &'a SkipReport,
    graph: &'a BuildReport,
    affiliations: &'a Option<AffiliationReport>,
    n_laureates: usize,
}

fn input_hashes(cfg: &RunConfig) -> Result<BTreeMap<&'static str, String>> {
    let mut inputs = BTreeMap::new();
    inputs.insert("corpus", hash_file(&cfg.input)?);
    inputs.insert("laureates", hash_file(&cfg.laureates)?);
    if let Some(p) = &cfg.geocode {
        inputs.insert("geocode", hash_file(p)?);
    }
    if let Some(p) = &cfg.affiliations {
        inputs.insert("affiliations", hash_file(p)?);
    }
    Ok(inputs)
}

/// Render every bundle file into memory, keyed by file name.
pub fn render_bundle(a: &Analysis, cfg: &RunConfig) -> Result<BTreeMap<String, Vec<u8>>> {
    let mut files = BTreeMap::new();
    let mut put = |name: &str, render: &dyn Fn(&mut Vec<u8>) -> Result<()>| -> Result<()> {
        let mut buf = Vec::new();
        render(&mut buf)?;
        files.insert(name.to_string(), buf);
        Ok(())
    };
    put("scholars.csv", &|b| {
        a.table.write_csv(b).map_err(|e| Error::Csv(e.to_string()))
    })?;
    put("run_report.json", &|b| {
        report::write_json(
            b,
            &RunReport {
                skipped: &a.skips,
                graph: &a.build,
                affiliations: &a.affiliations,
                n_laureates: a.tn.seeds().len(),
            },
        )
    })?;
    put("tn.csv", &|b| report::write_tn_csv(b, &a.table, &a.tn))?;
    put("tn_summary.json", &|b| {
        report::write_tn_summary(b, &a.tn, &a.distribution, Some(&a.null_model))
    })?;
    put("null_model.csv", &|b| report::write_null_model_csv(b, &a.null_model))?;
    put("null_model_mean.csv", &|b| report::write_null_model_mean_csv(b, &a.null_model))?;
    for c in &a.centralities {
        let m = c.measure.name();
        put(&format!("centrality_{m}.csv"), &|b| report::write_centrality_csv(b, c))?;
        put(&format!("centrality_{m}.json"), &|b| report::write_centrality_params(b, c))?;
    }
    put("fig2_buckets.csv", &|b| report::write_fig2_buckets(b, &a.fig2))?;
    put("table2_countries.csv", &|b| report::write_country_table(b, &a.countries))?;
    put("geographic_distribution.csv", &|b| report::write_geographic(b, &a.geography))?;
    put("table3_correlations.csv", &|b| report::write_correlations(b, &a.correlations))?;
    put("fig3_centrality_by_tn.csv", &|b| {
        report::write_centrality_by_tn(b, cfg.settings.bucket_statistic, &a.by_tn)
    })?;
    Ok(files)
}

/// Build the manifest for a rendered bundle.
pub fn manifest(cfg: &RunConfig, files: &BTreeMap<String, Vec<u8>>) -> Result<Manifest> {
    let inputs = input_hashes(cfg)?;
    let settings = serde_json::to_vec(&cfg.settings).map_err(|e| Error::Format(e.to_string()))?;
    let mut h = Sha256::new();
    h.update(&settings);
    for (name, hash) in &inputs {
        h.update(name.as_bytes());
        h.update(hash.as_bytes());
    }
    Ok(Manifest {
        tool: env!("CARGO_PKG_NAME"),
        tool_version: env!("CARGO_PKG_VERSION"),
        config_hash: hex::encode(h.finalize()),
        corpus_hash: inputs["corpus"].clone(),
        rng_seed: cfg.settings.rng_seed,
        inputs,
        outputs: files.iter().map(|(n, b)| (n.clone(), hash_bytes(b))).collect(),
    })
}

fn staging_dir(out_dir: &Path) -> PathBuf {
    let name = out_dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    out_dir.with_file_name(format!(".{name}.partial"))
}

/// Write `files` into `out_dir` through a sibling staging directory, so a
/// failure never leaves a partial bundle behind.
pub fn write_files(out_dir: &Path, files: &BTreeMap<String, Vec<u8>>) -> Result<()> {
    let staging = staging_dir(out_dir);
    let attempt = || -> Result<()> {
        if staging.exists() {
            fs::remove_dir_all(&staging).map_err(|e| Error::io(&staging, e))?;
        }
        fs::create_dir_all(&staging).map_err(|e| Error::io(&staging, e))?;
        for (name, bytes) in files {
            let p = staging.join(name);
            let mut f = BufWriter::new(File::create(&p).map_err(|e| Error::io(&p, e))?);
            f.write_all(bytes).and_then(|_| f.flush()).map_err(|e| Error::io(&p, e))?;
        }
        fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
        for name in files.keys() {
            let dst = out_dir.join(name);
            fs::rename(staging.join(name), &dst).map_err(|e| Error::io(&dst, e))?;
        }
        fs::remove_dir(&staging).map_err(|e| Error::io(&staging, e))
    };
    let result = attempt();
    if result.is_err() && staging.exists() {
        let _ = fs::remove_dir_all(&staging);
    }
    result
}

/// Analyze, render and write the full bundle plus `manifest.json`.
pub fn run_pipeline(cfg: &RunConfig) -> Result<Manifest> {
    let analysis = analyze(cfg)?;
    let mut files = render_bundle(&analysis, cfg)?;
    let m = manifest(cfg, &files)?;
    let mut buf = Vec::new();
    report::write_json(&mut buf, &m)?;
    files.insert("manifest.json".into(), buf);
    write_files(&cfg.out_dir, &files)?;
    log::info!("wrote {} files to {}", files.len(), cfg.out_dir.display());
    Ok(m)
}
