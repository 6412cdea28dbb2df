//! Streaming reader for DBLP-style XML dumps.
//!
//! The reader holds one event buffer and the fields of the publication being
//! assembled, so memory stays proportional to the largest single record no
//! matter how large the dump is.

use std::io::BufRead;

use quick_xml::escape::resolve_html5_entity;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::{admit_record, PaperRecord, SkipReport};
use crate::error::{Error, Result};

/// Element names that denote one publication.
pub const PUBLICATION_ELEMENTS: &[&[u8]] = &[
    b"article",
    b"inproceedings",
    b"proceedings",
    b"book",
    b"incollection",
    b"phdthesis",
    b"mastersthesis",
];

fn is_publication(name: &[u8]) -> bool {
    PUBLICATION_ELEMENTS.contains(&name)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Field {
    Title,
    Author,
    Year,
    Citations,
}

impl Field {
    fn from_name(name: &[u8]) -> Option<Field> {
        match name {
            b"title" => Some(Field::Title),
            b"author" => Some(Field::Author),
            b"year" => Some(Field::Year),
            b"n_citation" => Some(Field::Citations),
            _ => None,
        }
    }
}

#[derive(Default)]
struct Pending {
    key: String,
    title: String,
    year: Option<i32>,
    authors: Vec<String>,
    citations: u64,
}

/// Iterator over the publications of a DBLP XML stream.
///
/// Unknown elements are skipped. A publication without authors or with an
/// unusable year is dropped and counted in [`DblpReader::skip_report`].
/// After the first XML error the iterator yields that error once and then
/// stops.
pub struct DblpReader<R: BufRead> {
    xml: Reader<R>,
    buf: Vec<u8>,
    text: String,
    skips: SkipReport,
    depth: usize,
    finished: bool,
}

impl<R: BufRead> DblpReader<R> {
    pub fn new(reader: R) -> Self {
        let mut xml = Reader::from_reader(reader);
        xml.config_mut().trim_text(false);
        xml.config_mut().check_end_names = true;
        DblpReader {
            xml,
            buf: Vec::with_capacity(4096),
            text: String::new(),
            skips: SkipReport::default(),
            depth: 0,
            finished: false,
        }
    }

    pub fn skip_report(&self) -> SkipReport {
        self.skips
    }

    /// Capacity of the internal event buffer; bounded by the largest single
    /// event, independent of stream length.
    pub fn buffer_capacity(&self) -> usize {
        self.buf.capacity() + self.text.capacity()
    }

    fn fail(&mut self, message: impl Into<String>) -> Error {
        self.finished = true;
        Error::Xml {
            offset: self.xml.buffer_position(),
            message: message.into(),
        }
    }

    fn start_publication(&mut self, e: &BytesStart<'_>) -> Result<Pending> {
        let mut pending = Pending::default();
        for attr in e.attributes() {
            let attr = attr.map_err(|err| self.fail(err.to_string()))?;
            if attr.key.as_ref() == b"key" {
                pending.key = attr
                    .decode_and_unescape_value_with(self.xml.decoder(), resolve_html5_entity)
                    .map_err(|err| self.fail(err.to_string()))?
                    .into_owned();
            }
        }
        Ok(pending)
    }

    fn read_publication(&mut self, mut pending: Pending, pub_name: Vec<u8>) -> Result<Pending> {
        // (field being read, nesting depth inside that field)
        let mut field: Option<(Field, usize)> = None;
        loop {
            self.buf.clear();
            let event = match self.xml.read_event_into(&mut self.buf) {
                Ok(ev) => ev.into_owned(),
                Err(err) => return Err(self.fail(err.to_string())),
            };
            match event {
                Event::Start(e) => {
                    self.depth += 1;
                    match &mut field {
                        Some((_, nested)) => *nested += 1,
                        None => {
                            if let Some(f) = Field::from_name(e.name().as_ref()) {
                                field = Some((f, 0));
                                self.text.clear();
                            }
                        }
                    }
                }
                Event::Empty(_) => {}
                Event::Text(t) => {
                    if field.is_some() {
                        let s = t
                            .unescape_with(resolve_html5_entity)
                            .map_err(|err| self.fail(err.to_string()))?;
                        self.text.push_str(&s);
                    }
                }
                Event::CData(c) => {
                    if field.is_some() {
                        self.text.push_str(&String::from_utf8_lossy(c.as_ref()));
                    }
                }
                Event::End(e) => {
                    self.depth = self.depth.saturating_sub(1);
                    if let Some((f, nested)) = &mut field {
                        if *nested > 0 {
                            *nested -= 1;
                            continue;
                        }
                        let value = self.text.trim();
                        match f {
                            Field::Title => pending.title = value.to_string(),
                            Field::Author => {
                                if !value.is_empty() {
                                    pending.authors.push(value.to_string());
                                }
                            }
                            Field::Year => pending.year = value.parse().ok(),
                            Field::Citations => pending.citations = value.parse().unwrap_or(0),
                        }
                        field = None;
                    } else if e.name().as_ref() == pub_name.as_slice() {
                        return Ok(pending);
                    }
                }
                Event::Eof => return Err(self.fail("unexpected end of input inside a publication")),
                _ => {}
            }
        }
    }
}

impl<R: BufRead> Iterator for DblpReader<R> {
    type Item = Result<PaperRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.finished {
            self.buf.clear();
            let event = match self.xml.read_event_into(&mut self.buf) {
                Ok(ev) => ev.into_owned(),
                Err(err) => return Some(Err(self.fail(err.to_string()))),
            };
            match event {
                Event::Start(e) => {
                    self.depth += 1;
                    let name = e.name().as_ref().to_vec();
                    if is_publication(&name) {
                        let depth_at_start = self.depth;
                        let pending = match self
                            .start_publication(&e)
                            .and_then(|p| self.read_publication(p, name))
                        {
                            Ok(p) => p,
                            Err(err) => return Some(Err(err)),
                        };
                        debug_assert_eq!(self.depth + 1, depth_at_start);
                        if let Some(rec) = admit_record(
                            pending.key,
                            pending.title,
                            pending.year,
                            pending.authors,
                            pending.citations,
                            &mut self.skips,
                        ) {
                            return Some(Ok(rec));
                        }
                    }
                }
                Event::Empty(e) => {
                    if is_publication(e.name().as_ref()) {
                        self.skips.no_authors += 1;
                    }
                }
                Event::End(_) => self.depth = self.depth.saturating_sub(1),
                Event::Eof => {
                    self.finished = true;
                    if self.depth != 0 {
                        return Some(Err(Error::Xml {
                            offset: self.xml.buffer_position(),
                            message: "unexpected end of input: unclosed elements".into(),
                        }));
                    }
                }
                _ => {}
            }
        }
        None
    }
}
