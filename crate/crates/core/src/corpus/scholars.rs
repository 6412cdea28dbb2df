use std::collections::HashMap;
use std::io::Write;

use serde::Serialize;

use super::PaperRecord;

/// Dense scholar index in `[0, N)`; doubles as the graph node id.
pub type ScholarId = u32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScholarProfile {
    pub scholar_id: ScholarId,
    pub author_key: String,
    pub display_name: String,
    pub institution: Option<String>,
    pub country: Option<String>,
    pub latitude: Option<f64>,
    pub longitude: Option<f64>,
    pub n_papers: u64,
    pub n_citations: u64,
    pub is_laureate: bool,
}

/// A paper re-keyed by scholar id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paper {
    pub year: i32,
    pub citation_count: u64,
    pub authors: Vec<ScholarId>,
}

#[derive(Debug, Clone, Default)]
pub struct ScholarTable {
    profiles: Vec<ScholarProfile>,
    by_key: HashMap<String, ScholarId>,
}

impl ScholarTable {
    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn get(&self, id: ScholarId) -> Option<&ScholarProfile> {
        self.profiles.get(id as usize)
    }

    pub fn id_of(&self, key: &str) -> Option<ScholarId> {
        self.by_key.get(key).copied()
    }

    pub fn profiles(&self) -> &[ScholarProfile] {
        &self.profiles
    }

    pub fn profiles_mut(&mut self) -> &mut [ScholarProfile] {
        &mut self.profiles
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ScholarProfile> {
        self.profiles.iter()
    }

    fn intern(&mut self, key: &str) -> ScholarId {
        if let Some(&id) = self.by_key.get(key) {
            return id;
        }
        let id = self.profiles.len() as ScholarId;
        self.profiles.push(ScholarProfile {
            scholar_id: id,
            author_key: key.to_string(),
            display_name: display_name(key).to_string(),
            institution: None,
            country: None,
            latitude: None,
            longitude: None,
            n_papers: 0,
            n_citations: 0,
            is_laureate: false,
        });
        self.by_key.insert(key.to_string(), id);
        id
    }

    /// Keep only the listed scholars, renumbered densely in the given order.
    /// Returns the subset table; `keep[new_id] = old_id`.
    pub fn subset(&self, keep: &[ScholarId]) -> ScholarTable {
        let mut out = ScholarTable::default();
        for (new_id, &old) in keep.iter().enumerate() {
            let mut p = self.profiles[old as usize].clone();
            p.scholar_id = new_id as ScholarId;
            out.by_key.insert(p.author_key.clone(), p.scholar_id);
            out.profiles.push(p);
        }
        out
    }

    /// `scholar_id,author_key,display_name,institution,country,lat,lon,n_papers,n_citations,is_laureate`
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "scholar_id",
            "author_key",
            "display_name",
            "institution",
            "country",
            "lat",
            "lon",
            "n_papers",
            "n_citations",
            "is_laureate",
        ])?;
        let opt = |v: Option<f64>| v.map(crate::report::fmt_real).unwrap_or_default();
        for p in &self.profiles {
            w.write_record([
                p.scholar_id.to_string(),
                p.author_key.clone(),
                p.display_name.clone(),
                p.institution.clone().unwrap_or_default(),
                p.country.clone().unwrap_or_default(),
                opt(p.latitude),
                opt(p.longitude),
                p.n_papers.to_string(),
                p.n_citations.to_string(),
                p.is_laureate.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// DBLP keys carry a 4-digit homonym suffix ("Wei Wang 0001"); the display
/// name drops it.
fn display_name(key: &str) -> &str {
    match key.rsplit_once(' ') {
        Some((head, tail))
            if !head.is_empty() && tail.len() == 4 && tail.bytes().all(|b| b.is_ascii_digit()) =>
        {
            head
        }
        _ => key,
    }
}

/// Fold a record stream into a scholar table. Ids are assigned in order of
/// first appearance; every coauthor is credited with the paper's full
/// citation count.
pub fn resolve_authors(records: impl IntoIterator<Item = PaperRecord>) -> (ScholarTable, Vec<Paper>) {
    let mut table = ScholarTable::default();
    let mut papers = Vec::new();
    for rec in records {
        let authors: Vec<ScholarId> = rec.author_keys.iter().map(|k| table.intern(k)).collect();
        for &a in &authors {
            let p = &mut table.profiles[a as usize];
            p.n_papers += 1;
            p.n_citations += rec.citation_count;
        }
        papers.push(Paper {
            year: rec.year,
            citation_count: rec.citation_count,
            authors,
        });
    }
    (table, papers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, authors: &[&str], cites: u64) -> PaperRecord {
        PaperRecord {
            paper_id: id.into(),
            title: String::new(),
            year: 2000,
            author_keys: authors.iter().map(|s| s.to_string()).collect(),
            citation_count: cites,
        }
    }

    #[test]
    fn counts_papers_per_author() {
        let (t, papers) = resolve_authors(vec![rec("1", &["a", "b"], 0), rec("2", &["b", "c"], 0)]);
        assert_eq!(t.len(), 3);
        let n = |k: &str| t.get(t.id_of(k).unwrap()).unwrap().n_papers;
        assert_eq!((n("a"), n("b"), n("c")), (1, 2, 1));
        assert_eq!(papers[1].authors, vec![1, 2]);
    }

    #[test]
    fn full_citation_count_goes_to_each_coauthor() {
        let (t, _) = resolve_authors(vec![rec("1", &["a", "b"], 10)]);
        assert!(t.iter().all(|p| p.n_citations == 10));
    }

    #[test]
    fn display_name_strips_homonym_suffix() {
        assert_eq!(display_name("Wei Wang 0001"), "Wei Wang");
        assert_eq!(display_name("Route 66"), "Route 66");
        assert_eq!(display_name("0001"), "0001");
    }

    #[test]
    fn subset_renumbers() {
        let (t, _) = resolve_authors(vec![rec("1", &["a", "b", "c"], 0)]);
        let s = t.subset(&[2, 0]);
        assert_eq!(s.id_of("c"), Some(0));
        assert_eq!(s.id_of("a"), Some(1));
        assert_eq!(s.id_of("b"), None);
    }
}
