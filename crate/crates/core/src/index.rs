//! Positional inverted index with slop-bounded phrase search.
//!
//! Token positions are assigned before stopword removal, so proximity is
//! physical: removing "of" from "list of names" still leaves "list" and
//! "names" two positions apart.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::text::{split_sentences, tokenize_all, Document, StopwordList};

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("duplicate document id {0:?}")]
    DuplicateDoc(String),
    #[error("document id must be non-empty")]
    EmptyDocId,
    #[error("query must contain at least one term")]
    EmptyQuery,
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("index format error at byte {offset}: {message}")]
    Format { offset: u64, message: String },
}

/// Positions (token ordinals) of one term within one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionalPosting {
    pub doc_id: String,
    pub positions: Vec<u32>,
}

/// term -> postings, plus the original texts for sentence lookup.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InvertedIndex {
    // term -> doc_id -> positions; BTreeMaps keep persistence deterministic.
    terms: BTreeMap<String, BTreeMap<String, Vec<u32>>>,
    docs: BTreeMap<String, String>,
}

/// An unordered proximity query: all terms must occur within a window
/// whose spread (window size minus the in-order phrase length) is at most
/// `slop`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopQuery {
    terms: Vec<String>,
    slop: u32,
}

impl SlopQuery {
    /// Build from pre-split terms; terms are lowercased and deduplicated
    /// preserving first occurrence.
    pub fn new<I, S>(terms: I, slop: u32) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut seen = Vec::new();
        for term in terms {
            let term = term.as_ref().to_lowercase();
            if !term.is_empty() && !seen.contains(&term) {
                seen.push(term);
            }
        }
        SlopQuery { terms: seen, slop }
    }

    /// Tokenize a free-text phrase into a query.
    pub fn parse(phrase: &str, slop: u32) -> Self {
        SlopQuery::new(tokenize_all(phrase).into_iter().map(|t| t.surface), slop)
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn slop(&self) -> u32 {
        self.slop
    }
}

/// One search result: the matching document, the sentence containing the
/// best window and that window's spread.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub doc_id: String,
    pub sentence: String,
    pub spread: u32,
}

/// Counters exposed by the window matcher so tests can verify that each
/// position is consumed at most once per candidate document.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchStats {
    pub positions_read: usize,
}

impl InvertedIndex {
    /// Index a batch of documents. Fails on duplicate or empty ids.
    pub fn build(docs: &[Document], stopwords: &StopwordList) -> Result<Self, IndexError> {
        let mut index = InvertedIndex::default();
        for doc in docs {
            index.add_document(doc, stopwords)?;
        }
        Ok(index)
    }

    /// Incrementally add one document.
    pub fn add_document(
        &mut self,
        doc: &Document,
        stopwords: &StopwordList,
    ) -> Result<(), IndexError> {
        if doc.id.is_empty() {
            return Err(IndexError::EmptyDocId);
        }
        if self.docs.contains_key(&doc.id) {
            return Err(IndexError::DuplicateDoc(doc.id.clone()));
        }
        for (position, token) in tokenize_all(&doc.text).into_iter().enumerate() {
            if stopwords.contains(&token.surface) {
                continue;
            }
            self.terms
                .entry(token.surface)
                .or_default()
                .entry(doc.id.clone())
                .or_default()
                .push(position as u32);
        }
        self.docs.insert(doc.id.clone(), doc.text.clone());
        Ok(())
    }

    pub fn doc_count(&self) -> usize {
        self.docs.len()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn postings(&self, term: &str) -> Vec<PositionalPosting> {
        self.terms
            .get(&term.to_lowercase())
            .map(|docs| {
                docs.iter()
                    .map(|(doc_id, positions)| PositionalPosting {
                        doc_id: doc_id.clone(),
                        positions: positions.clone(),
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn doc_text(&self, doc_id: &str) -> Option<&str> {
        self.docs.get(doc_id).map(String::as_str)
    }
}

/// Find documents where some choice of one position per query term (in any
/// order) spans at most `slop` beyond the minimal phrase length. Results
/// are ranked by best spread, then doc id.
pub fn search(query: &SlopQuery, index: &InvertedIndex) -> Result<Vec<SearchHit>, IndexError> {
    Ok(search_with_stats(query, index)?.0)
}

/// [`search`] plus matcher counters for the whole query.
pub fn search_with_stats(
    query: &SlopQuery,
    index: &InvertedIndex,
) -> Result<(Vec<SearchHit>, MatchStats), IndexError> {
    if query.terms.is_empty() {
        return Err(IndexError::EmptyQuery);
    }
    let mut postings: Vec<&BTreeMap<String, Vec<u32>>> = Vec::with_capacity(query.terms.len());
    for term in &query.terms {
        match index.terms.get(term) {
            Some(p) => postings.push(p),
            None => return Ok((Vec::new(), MatchStats::default())),
        }
    }

    // Candidate docs appear in every term's posting map; walk the smallest.
    let smallest = postings
        .iter()
        .min_by_key(|p| p.len())
        .expect("at least one term");
    let mut stats = MatchStats::default();
    let mut hits = Vec::new();
    'docs: for doc_id in smallest.keys() {
        let mut lists: Vec<&[u32]> = Vec::with_capacity(postings.len());
        for p in &postings {
            match p.get(doc_id) {
                Some(positions) => lists.push(positions),
                None => continue 'docs,
            }
        }
        if let Some((spread, window_start)) = min_window_spread(&lists, &mut stats) {
            if spread <= query.slop {
                hits.push(SearchHit {
                    doc_id: doc_id.clone(),
                    sentence: sentence_at(index.docs.get(doc_id).map_or("", |s| s), window_start),
                    spread,
                });
            }
        }
    }
    hits.sort_by(|a, b| a.spread.cmp(&b.spread).then_with(|| a.doc_id.cmp(&b.doc_id)));
    Ok((hits, stats))
}

/// Minimal spread over all assignments of one position per list, and the
/// start position of a window achieving it. Classic k-way merge: each
/// pointer only ever moves forward, so every position is read once.
fn min_window_spread(lists: &[&[u32]], stats: &mut MatchStats) -> Option<(u32, u32)> {
    let k = lists.len();
    if lists.iter().any(|l| l.is_empty()) {
        return None;
    }
    let mut cursors = vec![0usize; k];
    stats.positions_read += k;
    let mut best: Option<(u32, u32)> = None;
    loop {
        let mut min_i = 0;
        let (mut lo, mut hi) = (u32::MAX, 0u32);
        for (i, cursor) in cursors.iter().enumerate() {
            let pos = lists[i][*cursor];
            if pos < lo {
                lo = pos;
                min_i = i;
            }
            hi = hi.max(pos);
        }
        let spread = (hi - lo).saturating_sub(k as u32 - 1);
        if best.is_none_or(|(s, _)| spread < s) {
            best = Some((spread, lo));
        }
        cursors[min_i] += 1;
        if cursors[min_i] >= lists[min_i].len() {
            return best;
        }
        stats.positions_read += 1;
    }
}

/// The sentence containing the token at `ordinal`, or the whole trimmed
/// text when splitting yields nothing.
fn sentence_at(text: &str, ordinal: u32) -> String {
    let tokens = tokenize_all(text);
    let char_at = tokens
        .get(ordinal as usize)
        .map(|t| t.start)
        .unwrap_or(0);
    for sentence in split_sentences(text) {
        if sentence.start <= char_at && char_at < sentence.end {
            return sentence.text;
        }
    }
    text.trim().to_string()
}

const MAGIC: &[u8; 5] = b"CIDX1";

impl InvertedIndex {
    /// Write the index to a length-prefixed binary file.
    pub fn persist(&self, path: impl AsRef<Path>) -> Result<(), IndexError> {
        let path = path.as_ref();
        let mut buf: Vec<u8> = Vec::new();
        buf.extend_from_slice(MAGIC);
        write_u32(&mut buf, self.docs.len() as u32);
        let doc_ordinals: BTreeMap<&str, u32> = self
            .docs
            .keys()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i as u32))
            .collect();
        for (id, text) in &self.docs {
            write_str(&mut buf, id);
            write_str(&mut buf, text);
        }
        write_u32(&mut buf, self.terms.len() as u32);
        for (term, docs) in &self.terms {
            write_str(&mut buf, term);
            write_u32(&mut buf, docs.len() as u32);
            for (doc_id, positions) in docs {
                write_u32(&mut buf, doc_ordinals[doc_id.as_str()]);
                write_u32(&mut buf, positions.len() as u32);
                for p in positions {
                    write_u32(&mut buf, *p);
                }
            }
        }
        let mut file = std::fs::File::create(path).map_err(|source| IndexError::Io {
            path: path.display().to_string(),
            source,
        })?;
        file.write_all(&buf).map_err(|source| IndexError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Read an index previously written by [`InvertedIndex::persist`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self, IndexError> {
        let path = path.as_ref();
        let mut raw = Vec::new();
        std::fs::File::open(path)
            .and_then(|mut f| f.read_to_end(&mut raw))
            .map_err(|source| IndexError::Io {
                path: path.display().to_string(),
                source,
            })?;
        let mut reader = ByteReader { raw: &raw, at: 0 };
        let magic = reader.take(MAGIC.len(), "magic header")?;
        if magic != MAGIC {
            return Err(IndexError::Format {
                offset: 0,
                message: format!("bad magic {magic:?}, expected {MAGIC:?}"),
            });
        }
        let doc_count = reader.read_u32("document count")?;
        let mut doc_ids = Vec::with_capacity(doc_count as usize);
        let mut docs = BTreeMap::new();
        for _ in 0..doc_count {
            let id = reader.read_str("document id")?;
            let text = reader.read_str("document text")?;
            doc_ids.push(id.clone());
            docs.insert(id, text);
        }
        let term_count = reader.read_u32("term count")?;
        let mut terms = BTreeMap::new();
        for _ in 0..term_count {
            let term = reader.read_str("term")?;
            let posting_count = reader.read_u32("posting count")?;
            let mut by_doc = BTreeMap::new();
            for _ in 0..posting_count {
                let ordinal = reader.read_u32("doc ordinal")? as usize;
                let doc_id = doc_ids.get(ordinal).cloned().ok_or(IndexError::Format {
                    offset: reader.at as u64,
                    message: format!("doc ordinal {ordinal} out of range"),
                })?;
                let n = reader.read_u32("position count")?;
                let mut positions = Vec::with_capacity(n as usize);
                for _ in 0..n {
                    positions.push(reader.read_u32("position")?);
                }
                by_doc.insert(doc_id, positions);
            }
            terms.insert(term, by_doc);
        }
        if reader.at != raw.len() {
            return Err(IndexError::Format {
                offset: reader.at as u64,
                message: format!("{} trailing bytes", raw.len() - reader.at),
            });
        }
        Ok(InvertedIndex { terms, docs })
    }
}

fn write_u32(buf: &mut Vec<u8>, value: u32) {
    buf.extend_from_slice(&value.to_le_bytes());
}

fn write_str(buf: &mut Vec<u8>, value: &str) {
    write_u32(buf, value.len() as u32);
    buf.extend_from_slice(value.as_bytes());
}

struct ByteReader<'a> {
    raw: &'a [u8],
    at: usize,
}

impl<'a> ByteReader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8], IndexError> {
        if self.at + n > self.raw.len() {
            return Err(IndexError::Format {
                offset: self.at as u64,
                message: format!("unexpected end of file reading {what}"),
            });
        }
        let slice = &self.raw[self.at..self.at + n];
        self.at += n;
        Ok(slice)
    }

    fn read_u32(&mut self, what: &str) -> Result<u32, IndexError> {
        let bytes = self.take(4, what)?;
        Ok(u32::from_le_bytes(bytes.try_into().unwrap()))
    }

    fn read_str(&mut self, what: &str) -> Result<String, IndexError> {
        let at = self.at;
        let len = self.read_u32(what)? as usize;
        let bytes = self.take(len, what)?;
        String::from_utf8(bytes.to_vec()).map_err(|_| IndexError::Format {
            offset: at as u64,
            message: format!("invalid utf-8 in {what}"),
        })
    }
}
