//! Bibliographic corpus ingestion.
//!
//! Two input formats are supported: DBLP-style XML ([`dblp`]) and a JSON-lines
//! interchange format ([`jsonl`]). Both yield [`PaperRecord`]s incrementally.
//! Records are then folded into a scholar table by [`resolve_authors`],
//! decorated with affiliations by [`attach_affiliations`], and laureates are
//! flagged by [`load_laureates`].

pub mod dblp;
pub mod geocode;
pub mod jsonl;
pub mod laureates;
pub mod scholars;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use dblp::DblpReader;
pub use geocode::{
    attach_affiliations, load_affiliations, AffiliationReport, Affiliations, GeoHit, GeocodeRow, GeocodeTable,
    Geocoder,
};
pub use jsonl::JsonlReader;
pub use laureates::load_laureates;
pub use scholars::{resolve_authors, Paper, ScholarId, ScholarProfile, ScholarTable};

pub const MIN_YEAR: i32 = 1900;
pub const MAX_YEAR: i32 = 2100;

/// One publication as read from a corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub paper_id: String,
    pub title: String,
    pub year: i32,
    pub author_keys: Vec<String>,
    pub citation_count: u64,
}

/// Counts of publication elements dropped during parsing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipReport {
    /// Publications with no author at all.
    pub no_authors: u64,
    /// Publications whose year is missing or outside [1900, 2100].
    pub invalid_year: u64,
    /// Repeated author keys removed from within a single record (the record
    /// itself is kept).
    pub duplicate_authors_dropped: u64,
}

impl SkipReport {
    pub fn skipped(&self) -> u64 {
        self.no_authors + self.invalid_year
    }

    pub fn merge(&mut self, other: &SkipReport) {
        self.no_authors += other.no_authors;
        self.invalid_year += other.invalid_year;
        self.duplicate_authors_dropped += other.duplicate_authors_dropped;
    }
}

/// Apply the record invariants shared by every parser. Returns `None` when the
/// record must be skipped, after bumping the matching counter.
pub(crate) fn admit_record(
    paper_id: String,
    title: String,
    year: Option<i32>,
    authors: Vec<String>,
    citation_count: u64,
    skips: &mut SkipReport,
) -> Option<PaperRecord> {
    if authors.is_empty() {
        skips.no_authors += 1;
        return None;
    }
    let year = match year {
        Some(y) if (MIN_YEAR..=MAX_YEAR).contains(&y) => y,
        _ => {
            skips.invalid_year += 1;
            return None;
        }
    };
    let mut seen = HashSet::with_capacity(authors.len());
    let before = authors.len();
    let author_keys: Vec<String> = authors
        .into_iter()
        .filter(|a| seen.insert(a.clone()))
        .collect();
    skips.duplicate_authors_dropped += (before - author_keys.len()) as u64;
    Some(PaperRecord {
        paper_id,
        title,
        year,
        author_keys,
        citation_count,
    })
}
