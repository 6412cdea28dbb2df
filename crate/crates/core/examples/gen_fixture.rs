//! Generate the synthetic test corpus: 500 scholars in layers around 5
//! laureates, with productivity and citations falling as distance grows.
//!
//! Usage: `cargo run --example gen_fixture -- <out_dir>`

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Scholars per distance level; level 0 holds the laureates. The trailing
/// group is a separate island with no path to any laureate.
const LEVELS: [usize; 7] = [5, 20, 100, 184, 130, 45, 10];
const ISLAND: usize = 6;

const GIVEN: [&str; 24] = [
    "Ada", "Alan", "Barbara", "Butler", "Charles", "Donald", "Edsger", "Frances", "Geoffrey",
    "Hui", "Ivan", "Jing", "Ken", "Leslie", "Manuel", "Niklaus", "Ole", "Priya", "Radia", "Shafi",
    "Tim", "Ugo", "Whitfield", "Yoshua",
];
const FAMILY: [&str; 26] = [
    "Abadi", "Bachman", "Chen", "Diaz", "Emerson", "Feigen", "Goldwasser", "Hartmanis", "Iverson",
    "Jiang", "Kahan", "Lamport", "Milner", "Nygaard", "Okafor", "Pnueli", "Qian", "Rivest",
    "Sifakis", "Tarjan", "Ullman", "Valiant", "Wirth", "Xu", "Yao", "Zhou",
];

/// (institution as written in affiliation rows, geocode pattern, country, lat, lon)
const INSTITUTIONS: [(&str, &str, &str, f64, f64); 14] = [
    ("Massachusetts Institute of Technology, Cambridge", "Massachusetts Institute of Technology", "United States", 42.3601, -71.0942),
    ("Stanford University, CA", "Stanford University", "United States", 37.4275, -122.1697),
    ("Carnegie Mellon University", "Carnegie Mellon", "United States", 40.4433, -79.9436),
    ("University of California, Berkeley", "Berkeley", "United States", 37.8719, -122.2585),
    ("Tsinghua University, Beijing", "Tsinghua", "China", 40.0000, 116.3264),
    ("Peking University", "Peking University", "China", 39.9869, 116.3059),
    ("ETH Zurich", "ETH Zurich", "Switzerland", 47.3763, 8.5476),
    ("University of Oxford", "Oxford", "United Kingdom", 51.7548, -1.2544),
    ("University of Cambridge, Computer Laboratory", "University of Cambridge", "United Kingdom", 52.2109, 0.0917),
    ("INRIA Paris", "INRIA", "France", 48.8400, 2.3500),
    ("Max Planck Institute for Informatics", "Max Planck", "Germany", 49.2577, 7.0455),
    ("University of Toronto", "Toronto", "Canada", 43.6629, -79.3957),
    ("Weizmann Institute of Science", "Weizmann", "Israel", 31.9077, 34.8115),
    ("National University of Singapore", "National University of Singapore", "Singapore", 1.2966, 103.7764),
];

struct Scholar {
    key: String,
    level: Option<usize>,
}

struct Paper {
    authors: Vec<usize>,
    year: i32,
    citations: u64,
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

/// Citations for a paper whose closest author sits at `level`.
fn citations(rng: &mut ChaCha8Rng, level: usize) -> u64 {
    let top = 220.0 / (1.0 + level as f64).powf(1.6);
    let v = top * rng.random_range(0.2..1.8);
    v.round() as u64
}

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixture"));
    fs::create_dir_all(&out).expect("create output dir");
    let mut rng = ChaCha8Rng::seed_from_u64(20_170_601);

    let mut scholars: Vec<Scholar> = Vec::new();
    let mut seen = std::collections::BTreeMap::<String, usize>::new();
    let mut name = |rng: &mut ChaCha8Rng| {
        let base = format!("{} {}", GIVEN.choose(rng).unwrap(), FAMILY.choose(rng).unwrap());
        let n = seen.entry(base.clone()).or_insert(0);
        *n += 1;
        if *n == 1 {
            base
        } else {
            format!("{base} {:04}", *n)
        }
    };
    let mut by_level: Vec<Vec<usize>> = Vec::new();
    for (level, &count) in LEVELS.iter().enumerate() {
        let mut ids = Vec::new();
        for _ in 0..count {
            ids.push(scholars.len());
            scholars.push(Scholar {
                key: name(&mut rng),
                level: Some(level),
            });
        }
        by_level.push(ids);
    }
    let island: Vec<usize> = (0..ISLAND)
        .map(|_| {
            scholars.push(Scholar {
                key: name(&mut rng),
                level: None,
            });
            scholars.len() - 1
        })
        .collect();

    let mut papers: Vec<Paper> = Vec::new();
    let year = |rng: &mut ChaCha8Rng| rng.random_range(1975..=2016);
    // Every scholar beyond level 0 coauthors with someone one level closer;
    // everything else stays within a level or between adjacent levels.
    for level in 1..LEVELS.len() {
        for &s in &by_level[level] {
            let parent = *by_level[level - 1].choose(&mut rng).unwrap();
            let c = citations(&mut rng, level - 1);
            papers.push(Paper {
                authors: vec![parent, s],
                year: year(&mut rng),
                citations: c,
            });
        }
    }
    for level in 0..LEVELS.len() {
        // productivity falls with distance
        let extra = |rng: &mut ChaCha8Rng| {
            let mean = 30.0 / (1.0 + level as f64).powf(1.3);
            (mean * rng.random_range(0.5..1.5)).round() as usize
        };
        for &s in &by_level[level] {
            for _ in 0..extra(&mut rng) {
                let mut authors = vec![s];
                let n_coauthors = rng.random_range(0..=2);
                // one partner level per paper, so the clique never spans
                // two levels
                let lv = match rng.random_range(0..4) {
                    0 if level > 0 => level - 1,
                    1 if level + 1 < LEVELS.len() => level + 1,
                    _ => level,
                };
                for _ in 0..n_coauthors {
                    let co = *by_level[lv].choose(&mut rng).unwrap();
                    if !authors.contains(&co) {
                        authors.push(co);
                    }
                }
                let closest = authors.iter().filter_map(|&a| scholars[a].level).min().unwrap();
                let c = citations(&mut rng, closest);
                papers.push(Paper {
                    authors,
                    year: year(&mut rng),
                    citations: c,
                });
            }
        }
    }
    for w in island.windows(2) {
        papers.push(Paper {
            authors: w.to_vec(),
            year: year(&mut rng),
            citations: rng.random_range(0..5),
        });
    }
    // the order of records in the file should not follow the layering
    for i in (1..papers.len()).rev() {
        let j = rng.random_range(0..=i);
        papers.swap(i, j);
    }

    let mut corpus = String::new();
    for (i, p) in papers.iter().enumerate() {
        let authors: Vec<String> = p.authors.iter().map(|&a| json_str(&scholars[a].key)).collect();
        writeln!(
            corpus,
            "{{\"id\":\"synth/{i:05}\",\"title\":\"Synthetic paper {i}\",\"year\":{},\"authors\":[{}],\"n_citation\":{}}}",
            p.year,
            authors.join(","),
            p.citations
        )
        .unwrap();
    }
    fs::write(out.join("corpus.jsonl"), corpus).unwrap();

    let mut laureates = String::from("# one author key or display name per line\n");
    for &s in &by_level[0] {
        writeln!(laureates, "{}", scholars[s].key).unwrap();
    }
    fs::write(out.join("laureates.txt"), laureates).unwrap();

    let mut geocode = String::from("pattern,country,lat,lon\n");
    for (_, pattern, country, lat, lon) in INSTITUTIONS {
        writeln!(geocode, "{pattern},{country},{lat},{lon}").unwrap();
    }
    fs::write(out.join("geocode.csv"), geocode).unwrap();

    // Weighted towards the first few institutions; about 4% of scholars have
    // no row and 2% an institution the geocoder does not know.
    let mut affiliations = String::from("author_key,institution\n");
    for s in &scholars {
        let roll: f64 = rng.random();
        if roll < 0.04 {
            continue;
        }
        let inst = if roll < 0.06 {
            "Independent Researcher".to_string()
        } else {
            let idx = (rng.random::<f64>().powf(1.7) * INSTITUTIONS.len() as f64) as usize;
            INSTITUTIONS[idx.min(INSTITUTIONS.len() - 1)].0.to_string()
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([s.key.as_str(), inst.as_str()]).unwrap();
        affiliations.push_str(std::str::from_utf8(&w.into_inner().unwrap()).unwrap());
    }
    fs::write(out.join("affiliations.csv"), affiliations).unwrap();

    fs::write(
        out.join("pipeline.toml"),
        "input = \"corpus.jsonl\"\n\
         format = \"jsonl\"\n\
         laureates = \"laureates.txt\"\n\
         geocode = \"geocode.csv\"\n\
         affiliations = \"affiliations.csv\"\n\
         trials = 20\n\
         rng_seed = 2017\n",
    )
    .unwrap();
    eprintln!("{} scholars, {} papers -> {}", scholars.len(), papers.len(), out.display());
}
