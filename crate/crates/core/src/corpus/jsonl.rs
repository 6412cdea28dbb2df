//! JSON-lines interchange format: one object per line with fields
//! `id`, `title`, `year`, `authors` and optional `n_citation`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{admit_record, PaperRecord, SkipReport};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    id: String,
    title: String,
    year: i64,
    authors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_citation: Option<u64>,
}

/// Iterator over the records of a JSON-lines stream. Blank lines are
/// skipped; a bad line yields an error carrying its 1-based line number and
/// iteration continues with the next line.
pub struct JsonlReader<R: BufRead> {
    lines: std::io::Lines<R>,
    line_no: usize,
    skips: SkipReport,
}

impl<R: BufRead> JsonlReader<R> {
    pub fn new(reader: R) -> Self {
        JsonlReader {
            lines: reader.lines(),
            line_no: 0,
            skips: SkipReport::default(),
        }
    }

    pub fn skip_report(&self) -> SkipReport {
        self.skips
    }
}

impl<R: BufRead> Iterator for JsonlReader<R> {
    type Item = Result<PaperRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = self.lines.next()?;
            self.line_no += 1;
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    return Some(Err(Error::Json {
                        line: self.line_no,
                        message: e.to_string(),
                    }))
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            let parsed: Line = match serde_json::from_str(&line) {
                Ok(p) => p,
                Err(e) => {
                    return Some(Err(Error::Json {
                        line: self.line_no,
                        message: e.to_string(),
                    }))
                }
            };
            let year = i32::try_from(parsed.year).ok();
            if let Some(rec) = admit_record(
                parsed.id,
                parsed.title,
                year,
                parsed.authors,
                parsed.n_citation.unwrap_or(0),
                &mut self.skips,
            ) {
                return Some(Ok(rec));
            }
        }
    }
}

/// Write records in the interchange format. `n_citation` is always emitted so
/// the output round-trips through [`JsonlReader`] unchanged.
pub fn write_jsonl<'a, W: Write>(
    mut out: W,
    records: impl IntoIterator<Item = &'a PaperRecord>,
) -> std::io::Result<()> {
    for rec in records {
        let line = Line {
            id: rec.paper_id.clone(),
            title: rec.title.clone(),
            year: rec.year as i64,
            authors: rec.author_keys.clone(),
            n_citation: Some(rec.citation_count),
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
