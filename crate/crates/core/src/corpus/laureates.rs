use std::collections::BTreeSet;
use std::io::BufRead;

use super::{ScholarId, ScholarTable};
use crate::error::{Error, Result};

/// Resolve a laureate list (one author key or display name per line, `#`
/// comments and blank lines ignored) against the scholar table and flag the
/// matches.
///
/// An exact author-key match takes precedence; otherwise the line must match
/// exactly one display name. Lines that match nothing or match several
/// scholars are all collected into a single error.
pub fn load_laureates<R: BufRead>(list: R, table: &mut ScholarTable) -> Result<BTreeSet<ScholarId>> {
    let mut ids = BTreeSet::new();
    let mut problems = Vec::new();
    for line in list.lines() {
        let line = line.map_err(|e| Error::Parse(format!("laureate list: {e}")))?;
        let entry = match line.split_once('#') {
            Some((head, _)) => head,
            None => line.as_str(),
        }
        .trim();
        if entry.is_empty() {
            continue;
        }
        if let Some(id) = table.id_of(entry) {
            ids.insert(id);
            continue;
        }
        let hits: Vec<&str> = table
            .iter()
            .filter(|p| p.display_name == entry)
            .map(|p| p.author_key.as_str())
            .collect();
        match hits.as_slice() {
            [] => problems.push(format!("{entry:?} not found")),
            [key] => {
                ids.insert(table.id_of(key).expect("key from table"));
            }
            many => problems.push(format!(
                "{entry:?} is ambiguous ({})",
                many.join(", ")
            )),
        }
    }
    if !problems.is_empty() {
        return Err(Error::Laureates(problems));
    }
    for p in table.profiles_mut() {
        p.is_laureate = ids.contains(&p.scholar_id);
    }
    Ok(ids)
}
