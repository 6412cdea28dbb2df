//! Offline institution geocoding and affiliation attachment.

use std::collections::{HashMap, HashSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::ScholarTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GeoHit {
    pub institution: String,
    pub country: String,
    pub latitude: f64,
    pub longitude: f64,
}

/// Maps a raw institution string to a location.
pub trait Geocoder {
    fn locate(&self, institution: &str) -> Option<GeoHit>;
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct GeocodeRow {
    pub pattern: String,
    pub country: String,
    pub lat: f64,
    pub lon: f64,
}

/// Pattern table matched case-insensitively as substrings, longest pattern
/// first.
#[derive(Debug, Clone, Default)]
pub struct GeocodeTable {
    // (lowercased pattern, row), longest pattern first
    rows: Vec<(String, GeocodeRow)>,
}

impl GeocodeTable {
    pub fn new(rows: Vec<GeocodeRow>) -> Result<Self> {
        let mut seen = HashSet::new();
        for r in &rows {
            if r.pattern.trim().is_empty() {
                return Err(Error::Validation("geocode table: empty pattern".into()));
            }
            if !seen.insert(r.pattern.to_lowercase()) {
                return Err(Error::Validation(format!(
                    "geocode table: duplicate pattern {:?}",
                    r.pattern
                )));
            }
            if !(-90.0..=90.0).contains(&r.lat) || !(-180.0..=180.0).contains(&r.lon) {
                return Err(Error::Validation(format!(
                    "geocode table: coordinates out of range for {:?}",
                    r.pattern
                )));
            }
        }
        let mut rows: Vec<_> = rows.into_iter().map(|r| (r.pattern.to_lowercase(), r)).collect();
        rows.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        Ok(GeocodeTable { rows })
    }

    /// CSV with header `pattern,country,lat,lon`.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
        if headers.iter().collect::<Vec<_>>() != ["pattern", "country", "lat", "lon"] {
            return Err(Error::Csv(format!(
                "geocode table: expected header pattern,country,lat,lon, found {}",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let rows = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<GeocodeRow>, _>>()
            .map_err(|e| Error::Csv(format!("geocode table: {e}")))?;
        Self::new(rows)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

impl Geocoder for GeocodeTable {
    fn locate(&self, institution: &str) -> Option<GeoHit> {
        let needle = institution.to_lowercase();
        self.rows
            .iter()
            .find(|(pat, _)| needle.contains(pat.as_str()))
            .map(|(_, row)| GeoHit {
                institution: institution.trim().to_string(),
                country: row.country.clone(),
                latitude: row.lat,
                longitude: row.lon,
            })
    }
}

/// Affiliation rows keyed by author key, plus the number of keys that were
/// listed more than once (last row wins).
#[derive(Debug, Clone, Default)]
pub struct Affiliations {
    pub by_key: HashMap<String, String>,
    pub duplicate_rows: u64,
}

/// CSV with header `author_key,institution`.
pub fn load_affiliations<R: Read>(reader: R) -> Result<Affiliations> {
    #[derive(Deserialize)]
    struct Row {
        author_key: String,
        institution: String,
    }
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Affiliations::default();
    for row in rdr.deserialize() {
        let row: Row = row.map_err(|e| Error::Csv(format!("affiliations: {e}")))?;
        if out.by_key.insert(row.author_key, row.institution).is_some() {
            out.duplicate_rows += 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AffiliationReport {
    pub matched: u64,
    /// Scholars with an affiliation row that no pattern matched.
    pub unmatched: u64,
    /// Scholars without any affiliation row.
    pub no_affiliation: u64,
    pub duplicate_rows: u64,
}

impl AffiliationReport {
    pub fn missing(&self) -> u64 {
        self.unmatched + self.no_affiliation
    }
}

/// Attach institution, country and coordinates to every scholar whose
/// affiliation resolves through `geocoder`. Unresolved scholars keep all
/// location fields empty; they remain in the table and the graph.
pub fn attach_affiliations(
    table: &mut ScholarTable,
    affiliations: &Affiliations,
    geocoder: &dyn Geocoder,
) -> AffiliationReport {
    let mut report = AffiliationReport {
        duplicate_rows: affiliations.duplicate_rows,
        ..Default::default()
    };
    for p in table.profiles_mut() {
        p.institution = None;
        p.country = None;
        p.latitude = None;
        p.longitude = None;
        let Some(raw) = affiliations.by_key.get(&p.author_key) else {
            report.no_affiliation += 1;
            continue;
        };
        match geocoder.locate(raw) {
            Some(hit) => {
                p.institution = Some(hit.institution);
                p.country = Some(hit.country);
                p.latitude = Some(hit.latitude);
                p.longitude = Some(hit.longitude);
                report.matched += 1;
            }
            None => report.unmatched += 1,
        }
    }
    report
}
