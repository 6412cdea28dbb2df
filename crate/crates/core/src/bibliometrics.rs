//! Scholar-level productivity and impact indicators, and their aggregation
//! by TN bucket and by country.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::{Paper, ScholarId, ScholarTable};
use crate::error::{Error, Result};
use crate::tn::TnResult;

/// Largest `h` such that at least `h` entries are `>= h`.
pub fn h_index(per_paper_citations: &[u64]) -> u32 {
    let mut sorted = per_paper_citations.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .enumerate()
        .take_while(|(i, &c)| c >= (*i as u64 + 1))
        .count() as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScholarMetrics {
    pub scholar_id: ScholarId,
    pub n_papers: u64,
    pub n_citations: u64,
    /// `None` when per-paper citation counts are unavailable.
    pub h_index: Option<u32>,
}

/// Indicators from the re-keyed papers; every coauthor is credited with the
/// full citation count of each paper.
pub fn scholar_metrics(n_scholars: usize, papers: &[Paper]) -> Vec<ScholarMetrics> {
    let mut cites: Vec<Vec<u64>> = vec![Vec::new(); n_scholars];
    for p in papers {
        for &a in &p.authors {
            cites[a as usize].push(p.citation_count);
        }
    }
    cites
        .into_iter()
        .enumerate()
        .map(|(i, c)| ScholarMetrics {
            scholar_id: i as ScholarId,
            n_papers: c.len() as u64,
            n_citations: c.iter().sum(),
            h_index: Some(h_index(&c)),
        })
        .collect()
}

/// Indicators from a scholar table alone (totals, no per-paper counts), so
/// the h-index is reported as missing.
pub fn metrics_from_totals(table: &ScholarTable) -> Vec<ScholarMetrics> {
    table
        .iter()
        .map(|p| ScholarMetrics {
            scholar_id: p.scholar_id,
            n_papers: p.n_papers,
            n_citations: p.n_citations,
            h_index: None,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TnBucketMetrics {
    pub tn: u32,
    pub n_scholars: usize,
    pub mean_papers: f64,
    pub mean_citations: f64,
    /// Mean over scholars with a known h-index.
    pub mean_h_index: Option<f64>,
}

#[derive(Default)]
struct Acc {
    n: usize,
    papers: f64,
    citations: f64,
    h_sum: f64,
    h_n: usize,
    tn_sum: f64,
    tn_n: usize,
}

impl Acc {
    fn add(&mut self, m: &ScholarMetrics, tn: Option<u32>) {
        self.n += 1;
        self.papers += m.n_papers as f64;
        self.citations += m.n_citations as f64;
        if let Some(h) = m.h_index {
            self.h_sum += h as f64;
            self.h_n += 1;
        }
        if let Some(t) = tn {
            self.tn_sum += t as f64;
            self.tn_n += 1;
        }
    }

    fn mean_h(&self) -> Option<f64> {
        (self.h_n > 0).then(|| self.h_sum / self.h_n as f64)
    }

    fn mean_tn(&self) -> Option<f64> {
        (self.tn_n > 0).then(|| self.tn_sum / self.tn_n as f64)
    }
}

fn check_aligned(metrics: &[ScholarMetrics], tn: &TnResult) -> Result<()> {
    if metrics.len() != tn.len() {
        return Err(Error::Argument(format!(
            "{} scholar metrics for {} TN entries",
            metrics.len(),
            tn.len()
        )));
    }
    Ok(())
}

/// Arithmetic means per TN value over reachable scholars. TN values with no
/// scholar produce no row.
pub fn metrics_by_tn(metrics: &[ScholarMetrics], tn: &TnResult) -> Result<Vec<TnBucketMetrics>> {
    check_aligned(metrics, tn)?;
    let mut buckets: BTreeMap<u32, Acc> = BTreeMap::new();
    for m in metrics {
        if let Some(t) = tn.tn(m.scholar_id) {
            buckets.entry(t).or_default().add(m, None);
        }
    }
    Ok(buckets
        .into_iter()
        .map(|(t, a)| TnBucketMetrics {
            tn: t,
            n_scholars: a.n,
            mean_papers: a.papers / a.n as f64,
            mean_citations: a.citations / a.n as f64,
            mean_h_index: a.mean_h(),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountryStats {
    pub country: String,
    pub n_scholars: usize,
    pub mean_papers: f64,
    pub mean_citations: f64,
    pub mean_h_index: Option<f64>,
    /// Scholars of this country with a TN.
    pub n_reachable: usize,
    /// Mean TN over those reachable scholars.
    pub mean_tn: Option<f64>,
}

fn group_by_country(
    table: &ScholarTable,
    metrics: &[ScholarMetrics],
    tn: &TnResult,
) -> BTreeMap<String, Acc> {
    let mut groups: BTreeMap<String, Acc> = BTreeMap::new();
    for p in table.iter() {
        let Some(country) = &p.country else { continue };
        groups
            .entry(country.clone())
            .or_default()
            .add(&metrics[p.scholar_id as usize], tn.tn(p.scholar_id));
    }
    groups
}

/// Per-country statistics over geocoded scholars, largest countries first
/// (ties by name), truncated to `top_k` rows.
pub fn country_table(
    table: &ScholarTable,
    metrics: &[ScholarMetrics],
    tn: &TnResult,
    top_k: usize,
) -> Result<Vec<CountryStats>> {
    if top_k == 0 {
        return Err(Error::Argument("top_k must be at least 1".into()));
    }
    check_aligned(metrics, tn)?;
    if table.len() != metrics.len() {
        return Err(Error::Argument("scholar table and metrics differ in length".into()));
    }
    let groups = group_by_country(table, metrics, tn);
    if groups.is_empty() {
        log::warn!("no geocoded scholars; country table is empty");
    }
    let mut rows: Vec<CountryStats> = groups
        .into_iter()
        .map(|(country, a)| CountryStats {
            country,
            n_scholars: a.n,
            mean_papers: a.papers / a.n as f64,
            mean_citations: a.citations / a.n as f64,
            mean_h_index: a.mean_h(),
            n_reachable: a.tn_n,
            mean_tn: a.mean_tn(),
        })
        .collect();
    rows.sort_by(|a, b| b.n_scholars.cmp(&a.n_scholars).then_with(|| a.country.cmp(&b.country)));
    rows.truncate(top_k);
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeoRow {
    pub country: String,
    /// `None` on the per-country summary row.
    pub location: Option<(f64, f64)>,
    pub n_scholars: usize,
    pub n_reachable: usize,
    pub mean_tn: Option<f64>,
}

/// Mean TN per country, followed by mean TN per distinct geocoded location.
/// Scholars without a geocode are left out.
pub fn geographic_distribution(table: &ScholarTable, tn: &TnResult) -> Result<Vec<GeoRow>> {
    if table.len() != tn.len() {
        return Err(Error::Argument("scholar table and TN differ in length".into()));
    }
    // (count, reachable, tn sum)
    let mut countries: BTreeMap<String, (usize, usize, u64)> = BTreeMap::new();
    let mut places: BTreeMap<(String, u64, u64), (f64, f64, usize, usize, u64)> = BTreeMap::new();
    for p in table.iter() {
        let (Some(country), Some(lat), Some(lon)) = (&p.country, p.latitude, p.longitude) else {
            continue;
        };
        let t = tn.tn(p.scholar_id);
        let c = countries.entry(country.clone()).or_default();
        c.0 += 1;
        let key = (country.clone(), lat.to_bits(), lon.to_bits());
        let l = places.entry(key).or_insert((lat, lon, 0, 0, 0));
        l.2 += 1;
        if let Some(t) = t {
            c.1 += 1;
            c.2 += t as u64;
            l.3 += 1;
            l.4 += t as u64;
        }
    }
    let mean = |n: usize, s: u64| (n > 0).then(|| s as f64 / n as f64);
    let mut rows: Vec<GeoRow> = countries
        .into_iter()
        .map(|(country, (n, r, s))| GeoRow {
            country,
            location: None,
            n_scholars: n,
            n_reachable: r,
            mean_tn: mean(r, s),
        })
        .collect();
    let mut locs: Vec<GeoRow> = places
        .into_iter()
        .map(|((country, _, _), (lat, lon, n, r, s))| GeoRow {
            country,
            location: Some((lat, lon)),
            n_scholars: n,
            n_reachable: r,
            mean_tn: mean(r, s),
        })
        .collect();
    locs.sort_by(|a, b| {
        a.country.cmp(&b.country).then_with(|| {
            let (al, bl) = (a.location.unwrap(), b.location.unwrap());
            al.0.total_cmp(&bl.0).then(al.1.total_cmp(&bl.1))
        })
    });
    rows.extend(locs);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{attach_affiliations, resolve_authors, Affiliations, GeocodeRow, GeocodeTable, PaperRecord};

    #[test]
    fn h_index_examples() {
        assert_eq!(h_index(&[]), 0);
        assert_eq!(h_index(&[10, 8, 5, 4, 3]), 4);
        assert_eq!(h_index(&[0, 0]), 0);
        assert_eq!(h_index(&[100]), 1);
        assert_eq!(h_index(&[3, 3, 3]), 3);
    }

    fn metric(id: u32, papers: u64) -> ScholarMetrics {
        ScholarMetrics {
            scholar_id: id,
            n_papers: papers,
            n_citations: 0,
            h_index: Some(0),
        }
    }

    #[test]
    fn bucket_mean_and_omitted_buckets() {
        let m = vec![metric(0, 2), metric(1, 4), metric(2, 9)];
        let tn = TnResult::from_values(vec![Some(1), Some(1), None]);
        let b = metrics_by_tn(&m, &tn).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].mean_papers, 3.0);
        assert_eq!(b[0].n_scholars, 2);
        assert!(b.iter().all(|r| r.tn != 7));
    }

    fn geo_fixture(assign: &[(&str, &str)]) -> ScholarTable {
        let keys: Vec<String> = assign.iter().map(|(k, _)| k.to_string()).collect();
        let (mut t, _) = resolve_authors(vec![PaperRecord {
            paper_id: "p".into(),
            title: "t".into(),
            year: 2000,
            author_keys: keys,
            citation_count: 1,
        }]);
        let geo = GeocodeTable::new(vec![
            GeocodeRow { pattern: "Alpha U".into(), country: "Aland".into(), lat: 1.0, lon: 1.0 },
            GeocodeRow { pattern: "Alpha T".into(), country: "Aland".into(), lat: 2.0, lon: 2.0 },
            GeocodeRow { pattern: "Beta U".into(), country: "Bland".into(), lat: 3.0, lon: 3.0 },
        ])
        .unwrap();
        let aff = Affiliations {
            by_key: assign
                .iter()
                .filter(|(_, i)| !i.is_empty())
                .map(|(k, i)| (k.to_string(), i.to_string()))
                .collect(),
            duplicate_rows: 0,
        };
        attach_affiliations(&mut t, &aff, &geo);
        t
    }

    #[test]
    fn top_country_only() {
        let t = geo_fixture(&[("a", "Alpha U"), ("b", "Alpha T"), ("c", "Alpha U"), ("d", "Beta U")]);
        let m = scholar_metrics(4, &[]);
        let tn = TnResult::from_values(vec![Some(0); 4]);
        let rows = country_table(&t, &m, &tn, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].country.as_str(), rows[0].n_scholars), ("Aland", 3));
        assert!(country_table(&t, &m, &tn, 0).is_err());
    }

    #[test]
    fn country_ties_break_by_name() {
        let t = geo_fixture(&[("a", "Beta U"), ("b", "Alpha U")]);
        let m = scholar_metrics(2, &[]);
        let tn = TnResult::from_values(vec![Some(0); 2]);
        let rows = country_table(&t, &m, &tn, 5).unwrap();
        assert_eq!(rows.iter().map(|r| r.country.as_str()).collect::<Vec<_>>(), vec!["Aland", "Bland"]);
    }

    #[test]
    fn geographic_mean_and_missing_country() {
        let t = geo_fixture(&[("a", "Alpha U"), ("b", "Alpha U"), ("c", "")]);
        let tn = TnResult::from_values(vec![Some(2), Some(4), Some(1)]);
        let rows = geographic_distribution(&t, &tn).unwrap();
        assert_eq!(rows.len(), 2); // one country row, one location row
        assert_eq!(rows[0].mean_tn, Some(3.0));
        assert_eq!(rows[0].n_scholars, 2);
        assert_eq!(rows[1].location, Some((1.0, 1.0)));
    }

    #[test]
    fn totals_only_metrics_have_no_h_index() {
        let t = geo_fixture(&[("a", "")]);
        assert_eq!(metrics_from_totals(&t)[0].h_index, None);
    }
}
