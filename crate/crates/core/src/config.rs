//! Run configuration: a flat TOML key-value file, overridden by command-line
//! flags, over built-in defaults.
//!
//! ```toml
//! input = "corpus.jsonl"
//! format = "jsonl"
//! laureates = "laureates.txt"
//! geocode = "geocode.csv"
//! affiliations = "affiliations.csv"
//! out_dir = "report"
//! trials = 100
//! rng_seed = 7
//! measures = ["degree", "betweenness"]
//! ```
//!
//! Relative paths in a file are taken relative to the file's directory.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::centrality::{BucketStatistic, Measure, Registry, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::DEFAULT_MAX_AUTHORS;
use crate::stats::{Method, MethodRegistry};
use crate::tn::DEFAULT_TRIALS;

/// Bibliometric indicators available for correlation besides centralities.
pub const BIBLIOMETRIC_INDICATORS: [&str; 3] = ["papers", "citations", "h_index"];
pub const DEFAULT_TOP_K: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Dblp,
    Jsonl,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dblp" | "xml" => Ok(InputFormat::Dblp),
            "jsonl" => Ok(InputFormat::Jsonl),
            other => Err(Error::Validation(format!("unknown input format {other:?}"))),
        }
    }
}

/// One layer of settings; unset fields fall through to the layer below.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub input: Option<PathBuf>,
    pub format: Option<InputFormat>,
    pub laureates: Option<PathBuf>,
    pub geocode: Option<PathBuf>,
    pub affiliations: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub max_authors: Option<usize>,
    pub radius: Option<u32>,
    pub k: Option<usize>,
    pub trials: Option<usize>,
    pub rng_seed: Option<u64>,
    pub exclude_seeds: Option<bool>,
    pub measures: Option<Vec<String>>,
    pub betweenness_samples: Option<usize>,
    pub tolerance: Option<f64>,
    pub max_iters: Option<usize>,
    pub bucket_statistic: Option<String>,
    pub indicators: Option<Vec<String>>,
    pub methods: Option<Vec<String>>,
    pub exclude_laureates: Option<bool>,
    pub top_k: Option<usize>,
}

macro_rules! overlay_fields {
    ($lower:ident, $upper:ident, $($f:ident),*) => {
        ConfigLayer { $($f: $upper.$f.or($lower.$f)),* }
    };
}

impl ConfigLayer {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    /// Read a config file, resolving its relative paths against the file's
    /// directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut layer = Self::from_toml(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut layer.input,
            &mut layer.laureates,
            &mut layer.geocode,
            &mut layer.affiliations,
            &mut layer.out_dir,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(layer)
    }

    /// Fields set in `upper` win.
    pub fn overlay(self, upper: ConfigLayer) -> ConfigLayer {
        let lower = self;
        overlay_fields!(
            lower, upper, input, format, laureates, geocode, affiliations, out_dir, max_authors,
            radius, k, trials, rng_seed, exclude_seeds, measures, betweenness_samples, tolerance,
            max_iters, bucket_statistic, indicators, methods, exclude_laureates, top_k
        )
    }
}

/// Fully resolved and validated settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: InputFormat,
    pub laureates: PathBuf,
    pub geocode: Option<PathBuf>,
    pub affiliations: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub settings: Settings,
}

/// The non-path part of a run; hashed into the manifest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub format: InputFormat,
    pub max_authors: usize,
    pub radius: Option<u32>,
    /// Null-model seed count; `None` uses the number of laureates.
    pub k: Option<usize>,
    pub trials: usize,
    pub rng_seed: u64,
    pub exclude_seeds: bool,
    pub measures: Vec<Measure>,
    pub betweenness_samples: Option<usize>,
    pub tolerance: f64,
    pub max_iters: usize,
    pub bucket_statistic: BucketStatistic,
    pub indicators: Vec<String>,
    pub methods: Vec<Method>,
    pub exclude_laureates: bool,
    pub top_k: usize,
}

fn require_file(what: &str, p: &Path) -> Result<()> {
    if p.is_file() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{what} file {} does not exist", p.display())))
    }
}

impl RunConfig {
    /// Apply defaults and validate. Fails before any work is done on missing
    /// files, unknown names or out-of-range numbers.
    pub fn resolve(layer: ConfigLayer) -> Result<RunConfig> {
        let input = layer
            .input
            .ok_or_else(|| Error::Validation("no input corpus given".into()))?;
        require_file("input", &input)?;
        let laureates = layer
            .laureates
            .ok_or_else(|| Error::Validation("no laureate list given".into()))?;
        require_file("laureate", &laureates)?;
        match (&layer.geocode, &layer.affiliations) {
            (Some(g), Some(a)) => {
                require_file("geocode", g)?;
                require_file("affiliation", a)?;
            }
            (None, None) => {}
            _ => {
                return Err(Error::Validation(
                    "geocode and affiliations must be given together".into(),
                ))
            }
        }
        let out_dir = layer
            .out_dir
            .ok_or_else(|| Error::Validation("no output directory given".into()))?;
        let format = match layer.format {
            Some(f) => f,
            None => match input.extension().and_then(|e| e.to_str()) {
                Some("xml") => InputFormat::Dblp,
                Some("jsonl") => InputFormat::Jsonl,
                _ => return Err(Error::Validation("cannot infer input format; set format".into())),
            },
        };

        let positive = |name: &str, v: Option<usize>, default: usize| -> Result<usize> {
            match v.unwrap_or(default) {
                0 => Err(Error::Validation(format!("{name} must be at least 1"))),
                n => Ok(n),
            }
        };
        let trials = positive("trials", layer.trials, DEFAULT_TRIALS)?;
        let max_authors = positive("max_authors", layer.max_authors, DEFAULT_MAX_AUTHORS)?;
        let max_iters = positive("max_iters", layer.max_iters, DEFAULT_MAX_ITERS)?;
        let top_k = positive("top_k", layer.top_k, DEFAULT_TOP_K)?;
        let k = layer.k.map(|k| positive("k", Some(k), 1)).transpose()?;
        let betweenness_samples = layer
            .betweenness_samples
            .map(|s| positive("betweenness_samples", Some(s), 1))
            .transpose()?;
        let tolerance = layer.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::Validation(format!("tolerance must be positive, got {tolerance}")));
        }

        let registry = Registry::default();
        let measures = match layer.measures {
            None => Measure::ALL.to_vec(),
            Some(names) => {
                let mut out = Vec::new();
                for n in &names {
                    let m = registry.get(n)?.measure();
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
                out
            }
        };
        let method_registry = MethodRegistry::default();
        let methods = match layer.methods {
            None => Method::ALL.to_vec(),
            Some(names) => {
                let mut out = Vec::new();
                for n in &names {
                    let m = method_registry.get(n)?.method();
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
                out
            }
        };
        let indicators = layer
            .indicators
            .unwrap_or_else(|| BIBLIOMETRIC_INDICATORS.iter().map(|s| s.to_string()).collect());
        for ind in &indicators {
            let known = BIBLIOMETRIC_INDICATORS.contains(&ind.as_str())
                || measures.iter().any(|m| m.name() == ind);
            if !known {
                return Err(Error::Validation(format!(
                    "unknown indicator {ind:?}; use one of {} or a computed centrality measure",
                    BIBLIOMETRIC_INDICATORS.join(", ")
                )));
            }
        }
        let bucket_statistic = match layer.bucket_statistic {
            None => BucketStatistic::default(),
            Some(s) => s.parse()?,
        };

        Ok(RunConfig {
            input,
            format,
            laureates,
            geocode: layer.geocode,
            affiliations: layer.affiliations,
            out_dir,
            settings: Settings {
                format,
                max_authors,
                radius: layer.radius,
                k,
                trials,
                rng_seed: layer.rng_seed.unwrap_or(0),
                exclude_seeds: layer.exclude_seeds.unwrap_or(false),
                measures,
                betweenness_samples,
                tolerance,
                max_iters,
                bucket_statistic,
                indicators,
                methods,
                exclude_laureates: layer.exclude_laureates.unwrap_or(false),
                top_k,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn files() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("c.jsonl"), "").unwrap();
        std::fs::write(dir.path().join("l.txt"), "").unwrap();
        dir
    }

    fn base(dir: &Path) -> ConfigLayer {
        ConfigLayer {
            input: Some(dir.join("c.jsonl")),
            laureates: Some(dir.join("l.txt")),
            out_dir: Some(dir.join("out")),
            ..Default::default()
        }
    }

    #[test]
    fn defaults_fill_in() {
        let dir = files();
        let cfg = RunConfig::resolve(base(dir.path())).unwrap();
        assert_eq!(cfg.format, InputFormat::Jsonl);
        assert_eq!(cfg.settings.trials, DEFAULT_TRIALS);
        assert_eq!(cfg.settings.measures, Measure::ALL.to_vec());
        assert_eq!(cfg.settings.top_k, DEFAULT_TOP_K);
    }

    #[test]
    fn upper_layer_wins() {
        let file = ConfigLayer::from_toml("trials = 5\nrng_seed = 3\n").unwrap();
        let flags = ConfigLayer {
            trials: Some(9),
            ..Default::default()
        };
        let merged = file.overlay(flags);
        assert_eq!(merged.trials, Some(9));
        assert_eq!(merged.rng_seed, Some(3));
    }

    #[test]
    fn validation_errors() {
        let dir = files();
        let mut l = base(dir.path());
        l.measures = Some(vec!["pagerank".into()]);
        assert!(matches!(RunConfig::resolve(l), Err(Error::Validation(_))));
        let mut l = base(dir.path());
        l.k = Some(0);
        assert!(matches!(RunConfig::resolve(l), Err(Error::Validation(_))));
        let mut l = base(dir.path());
        l.trials = Some(0);
        assert!(matches!(RunConfig::resolve(l), Err(Error::Validation(_))));
        let mut l = base(dir.path());
        l.input = Some(dir.path().join("missing.jsonl"));
        assert!(matches!(RunConfig::resolve(l), Err(Error::Validation(_))));
        let mut l = base(dir.path());
        l.indicators = Some(vec!["load".into()]);
        l.measures = Some(vec!["degree".into()]);
        assert!(matches!(RunConfig::resolve(l), Err(Error::Validation(_))));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(ConfigLayer::from_toml("trails = 3").is_err());
    }
}
