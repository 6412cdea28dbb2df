//! CSV and JSON writers for the report bundle. Reals are written with six
//! significant digits; missing values are empty cells.

use std::io::Write;

use serde::Serialize;

use crate::bibliometrics::{CountryStats, GeoRow, TnBucketMetrics};
use crate::centrality::{BucketStatistic, CentralityScores, TnBucketCentrality};
use crate::corpus::ScholarTable;
use crate::error::{Error, Result};
use crate::stats::CorrelationRow;
use crate::tn::{NullModelResult, TnDistribution, TnResult};

/// Format a real with six significant digits, `%.6g` style.
pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.5e}", v);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..6).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_real(v: Option<f64>) -> String {
    v.map(fmt_real).unwrap_or_default()
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::Writer::from_writer(out)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Csv(e.to_string())
}

fn finish<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::Format(e.to_string()))?;
    out.write_all(b"\n").map_err(|e| Error::Format(e.to_string()))
}

/// `scholar_id,author_key,tn,reachable`; unreachable scholars have an empty
/// `tn` cell.
pub fn write_tn_csv<W: Write>(out: W, table: &ScholarTable, tn: &TnResult) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["scholar_id", "author_key", "tn", "reachable"]).map_err(csv_err)?;
    for p in table.iter() {
        let t = tn.tn(p.scholar_id);
        w.write_record([
            p.scholar_id.to_string(),
            p.author_key.clone(),
            t.map(|t| t.to_string()).unwrap_or_default(),
            t.is_some().to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

/// `trial,tn_value,count`, one row per non-empty bucket of each trial.
pub fn write_null_model_csv<W: Write>(out: W, nm: &NullModelResult) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["trial", "tn_value", "count"]).map_err(csv_err)?;
    for t in &nm.per_trial {
        for (tn, count) in &t.histogram {
            w.write_record([t.trial.to_string(), tn.to_string(), count.to_string()])
                .map_err(csv_err)?;
        }
    }
    finish(w)
}

/// `tn_value,mean_count,std_count` across trials.
pub fn write_null_model_mean_csv<W: Write>(out: W, nm: &NullModelResult) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["tn_value", "mean_count", "std_count"]).map_err(csv_err)?;
    for b in &nm.buckets {
        w.write_record([b.tn.to_string(), fmt_real(b.mean_count), fmt_real(b.std_count)])
            .map_err(csv_err)?;
    }
    finish(w)
}

#[derive(Serialize)]
struct NullSummary {
    trials: usize,
    k: usize,
    rng_seed: u64,
    exclude_seeds: bool,
    mean_tn: String,
    std_mean_tn: String,
}

#[derive(Serialize)]
struct TnSummary<'a> {
    n_scholars: usize,
    n_seeds: usize,
    n_reachable: usize,
    n_unreachable: usize,
    modal_tn: Option<u32>,
    share_2_to_5: String,
    mean_tn: Option<String>,
    histogram: &'a std::collections::BTreeMap<u32, usize>,
    null_model: Option<NullSummary>,
}

/// Summary JSON: modal TN, share of reachable scholars with TN in [2, 5],
/// unreachable count, histogram and the null-model means when present.
pub fn write_tn_summary<W: Write>(
    out: W,
    tn: &TnResult,
    dist: &TnDistribution,
    null_model: Option<&NullModelResult>,
) -> Result<()> {
    let mean_tn = (dist.n_reachable > 0).then(|| {
        let s: u64 = dist.histogram.iter().map(|(&t, &c)| t as u64 * c as u64).sum();
        fmt_real(s as f64 / dist.n_reachable as f64)
    });
    let summary = TnSummary {
        n_scholars: tn.len(),
        n_seeds: tn.seeds().len(),
        n_reachable: dist.n_reachable,
        n_unreachable: dist.n_unreachable,
        modal_tn: dist.modal_tn,
        share_2_to_5: fmt_real(dist.share_2_to_5),
        mean_tn,
        histogram: &dist.histogram,
        null_model: null_model.map(|nm| NullSummary {
            trials: nm.trials,
            k: nm.k,
            rng_seed: nm.rng_seed,
            exclude_seeds: nm.exclude_seeds,
            mean_tn: fmt_real(nm.mean_tn),
            std_mean_tn: fmt_real(nm.std_mean_tn),
        }),
    };
    write_json(out, &summary)
}

/// `scholar_id,measure,value,normalized_value`.
pub fn write_centrality_csv<W: Write>(out: W, scores: &CentralityScores) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["scholar_id", "measure", "value", "normalized_value"]).map_err(csv_err)?;
    let name = scores.measure.name();
    for (v, (raw, norm)) in scores.values.iter().zip(scores.normalized_values()).enumerate() {
        w.write_record([v.to_string(), name.to_string(), fmt_real(*raw), fmt_real(norm)])
            .map_err(csv_err)?;
    }
    finish(w)
}

#[derive(Serialize)]
struct CentralitySidecar<'a> {
    measure: &'static str,
    n_nodes: usize,
    normalization_factor: String,
    params: &'a std::collections::BTreeMap<String, serde_json::Value>,
}

/// Parameters behind a centrality CSV.
pub fn write_centrality_params<W: Write>(out: W, scores: &CentralityScores) -> Result<()> {
    write_json(
        out,
        &CentralitySidecar {
            measure: scores.measure.name(),
            n_nodes: scores.values.len(),
            normalization_factor: fmt_real(scores.normalization_factor()),
            params: &scores.params,
        },
    )
}

/// `tn,n_scholars,mean_papers,mean_citations,mean_h_index`.
pub fn write_fig2_buckets<W: Write>(out: W, rows: &[TnBucketMetrics]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["tn", "n_scholars", "mean_papers", "mean_citations", "mean_h_index"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.tn.to_string(),
            r.n_scholars.to_string(),
            fmt_real(r.mean_papers),
            fmt_real(r.mean_citations),
            opt_real(r.mean_h_index),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

/// `Country,Scholars,Papers,Citations,h-index,TN`, with per-scholar means.
pub fn write_country_table<W: Write>(out: W, rows: &[CountryStats]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["Country", "Scholars", "Papers", "Citations", "h-index", "TN"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.country.clone(),
            r.n_scholars.to_string(),
            fmt_real(r.mean_papers),
            fmt_real(r.mean_citations),
            opt_real(r.mean_h_index),
            opt_real(r.mean_tn),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

/// `country,lat,lon,n_scholars,n_reachable,mean_tn`; country summary rows
/// have empty coordinates.
pub fn write_geographic<W: Write>(out: W, rows: &[GeoRow]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["country", "lat", "lon", "n_scholars", "n_reachable", "mean_tn"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.country.clone(),
            opt_real(r.location.map(|l| l.0)),
            opt_real(r.location.map(|l| l.1)),
            r.n_scholars.to_string(),
            r.n_reachable.to_string(),
            opt_real(r.mean_tn),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

/// `method,indicator,coefficient,p_value,stars,n`.
pub fn write_correlations<W: Write>(out: W, rows: &[CorrelationRow]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["method", "indicator", "coefficient", "p_value", "stars", "n"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.method.name().to_string(),
            r.indicator.clone(),
            fmt_real(r.result.coefficient),
            fmt_real(r.result.p_value),
            r.result.stars.to_string(),
            r.result.n.to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

/// `measure,statistic,tn,n_nodes,n_positive,n_zero,ln_raw,ln_normalized`.
pub fn write_centrality_by_tn<W: Write>(
    out: W,
    stat: BucketStatistic,
    rows: &[(&'static str, Vec<TnBucketCentrality>)],
) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "measure",
        "statistic",
        "tn",
        "n_nodes",
        "n_positive",
        "n_zero",
        "ln_raw",
        "ln_normalized",
    ])
    .map_err(csv_err)?;
    let stat = match stat {
        BucketStatistic::Mean => "mean",
        BucketStatistic::Median => "median",
    };
    for (measure, buckets) in rows {
        for b in buckets {
            w.write_record([
                measure.to_string(),
                stat.to_string(),
                b.tn.to_string(),
                b.n_nodes.to_string(),
                b.n_positive.to_string(),
                b.n_zero.to_string(),
                opt_real(b.ln_raw),
                opt_real(b.ln_normalized),
            ])
            .map_err(csv_err)?;
        }
    }
    finish(w)
}
