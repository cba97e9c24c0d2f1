//! Format analysis, tokenization, sentence splitting and keyword extraction.
//!
//! These are the first stages of every extraction pipeline: raw input is
//! stripped of markup, segmented into tokens and sentences, and reduced to
//! keywords by comparing document frequencies against a reference corpus.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entities;

#[derive(Debug, Error)]
pub enum TextError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid stopword {word:?} on line {line}: entries must not contain whitespace")]
    InvalidStopword { word: String, line: usize },
    #[error("invalid frequency table line {line}: {message}")]
    InvalidFrequency { line: usize, message: String },
}

/// A raw input record: an identifier plus its unstructured text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub source: Option<String>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        let id = id.into();
        debug_assert!(!id.is_empty(), "document id must be non-empty");
        Document {
            id,
            text: text.into(),
            source: None,
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }
}

/// One word of a document. Offsets are 0-based character offsets into the
/// original text; `surface` is the lowercased slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub start: usize,
    pub end: usize,
    pub index: usize,
}

/// A sentence with character offsets into the original text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub index: usize,
}

/// Lowercase words removed during tokenization.
#[derive(Debug, Clone, Default)]
pub struct StopwordList {
    words: HashSet<String>,
}

const DEFAULT_STOPWORDS: &str = include_str!("../resources/stopwords.txt");

impl StopwordList {
    /// An empty list: nothing is filtered.
    pub fn empty() -> Self {
        StopwordList::default()
    }

    /// The stopword list shipped with the crate.
    pub fn english() -> Self {
        StopwordList::parse(DEFAULT_STOPWORDS).expect("bundled stopword list is valid")
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words = words
            .into_iter()
            .map(|w| w.as_ref().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        StopwordList { words }
    }

    /// Load from a UTF-8 file: one word per line, `#` starts a comment.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, TextError> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|source| TextError::Io {
            path: path.display().to_string(),
            source,
        })?;
        StopwordList::parse(&raw)
    }

    fn parse(raw: &str) -> Result<Self, TextError> {
        let mut words = HashSet::new();
        for (lineno, line) in raw.lines().enumerate() {
            let entry = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            if entry.chars().any(char::is_whitespace) {
                return Err(TextError::InvalidStopword {
                    word: entry.to_string(),
                    line: lineno + 1,
                });
            }
            words.insert(entry.to_lowercase());
        }
        Ok(StopwordList { words })
    }

    pub fn contains(&self, word: &str) -> bool {
        if self.words.is_empty() {
            return false;
        }
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// A keyword with its in-document frequency and keyness score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Keyword {
    pub term: String,
    pub frequency: usize,
    pub score: f64,
}

/// Relative term frequencies from a large reference corpus,
/// loaded from TSV `term<TAB>relative_frequency`.
#[derive(Debug, Clone, Default)]
pub struct FreqTable {
    freqs: BTreeMap<String, f64>,
}

impl FreqTable {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, TextError> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|source| TextError::Io {
            path: path.display().to_string(),
            source,
        })?;
        FreqTable::parse(&raw)
    }

    pub fn parse(raw: &str) -> Result<Self, TextError> {
        let mut freqs = BTreeMap::new();
        for (lineno, line) in raw.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (term, freq) = line.split_once('\t').ok_or(TextError::InvalidFrequency {
                line: lineno + 1,
                message: "expected term<TAB>frequency".to_string(),
            })?;
            let freq: f64 = freq.trim().parse().map_err(|_| TextError::InvalidFrequency {
                line: lineno + 1,
                message: format!("bad frequency {:?}", freq.trim()),
            })?;
            if !freq.is_finite() || freq < 0.0 {
                return Err(TextError::InvalidFrequency {
                    line: lineno + 1,
                    message: format!("frequency {freq} out of range"),
                });
            }
            freqs.insert(term.trim().to_lowercase(), freq);
        }
        Ok(FreqTable { freqs })
    }

    pub fn get(&self, term: &str) -> Option<f64> {
        self.freqs.get(&term.to_lowercase()).copied()
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }
}

/// Input kinds understood by [`strip_format`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextKind {
    Html,
    Plain,
}

impl std::str::FromStr for TextKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "html" => Ok(TextKind::Html),
            "plain" | "text" | "txt" => Ok(TextKind::Plain),
            other => Err(format!("unknown text kind {other:?}")),
        }
    }
}

impl fmt::Display for TextKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TextKind::Html => write!(f, "html"),
            TextKind::Plain => write!(f, "plain"),
        }
    }
}

/// Remove formatting from raw input.
///
/// For HTML, tags are stripped tolerantly (unclosed tags included),
/// entities are decoded, `script`/`style` bodies are dropped and
/// block-level boundaries become newlines. For plain text, line endings
/// are normalized to LF.
pub fn strip_format(raw: &str, kind: TextKind) -> String {
    match kind {
        TextKind::Plain => normalize_newlines(raw),
        TextKind::Html => strip_html(&normalize_newlines(raw)),
    }
}

fn normalize_newlines(raw: &str) -> String {
    raw.replace("\r\n", "\n").replace('\r', "\n")
}

const BLOCK_TAGS: &[&str] = &[
    "p", "div", "br", "li", "ul", "ol", "table", "tr", "td", "th", "h1", "h2", "h3", "h4", "h5",
    "h6", "blockquote", "pre", "section", "article", "header", "footer", "hr", "title",
];

fn strip_html(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let bytes = raw.as_bytes();
    let mut i = 0;
    let mut text_start = 0;
    let flush = |out: &mut String, from: usize, to: usize| {
        if from < to {
            out.push_str(&entities::decode(&raw[from..to]));
        }
    };
    while i < bytes.len() {
        if bytes[i] == b'<' {
            let rest = &raw[i..];
            if let Some(tag) = scan_tag(rest) {
                flush(&mut out, text_start, i);
                if tag.is_comment_or_decl {
                    // skipped entirely
                } else if matches!(tag.name.as_str(), "script" | "style") && !tag.is_close {
                    // Drop everything up to the matching close tag.
                    let close = format!("</{}", tag.name);
                    let after = i + tag.len;
                    let skip = raw[after..]
                        .to_ascii_lowercase()
                        .find(&close)
                        .map(|p| {
                            let tail = after + p;
                            raw[tail..].find('>').map(|q| tail + q + 1).unwrap_or(raw.len())
                        })
                        .unwrap_or(raw.len());
                    i = skip;
                    text_start = i;
                    continue;
                } else if BLOCK_TAGS.contains(&tag.name.as_str()) {
                    push_boundary(&mut out);
                }
                i += tag.len;
                text_start = i;
                continue;
            }
        }
        i += next_char_len(raw, i);
    }
    flush(&mut out, text_start, raw.len());
    // Collapse boundary runs introduced above and drop a leading newline.
    let trimmed = out.trim_start_matches('\n');
    trimmed.to_string()
}

fn push_boundary(out: &mut String) {
    if !out.ends_with('\n') {
        out.push('\n');
    }
}

struct ScannedTag {
    name: String,
    is_close: bool,
    is_comment_or_decl: bool,
    len: usize,
}

/// Scan one markup construct starting at `<`. Returns `None` when the `<`
/// is literal text (not followed by a name, `/`, `!` or `?`).
fn scan_tag(s: &str) -> Option<ScannedTag> {
    let bytes = s.as_bytes();
    if bytes.len() < 2 {
        return None;
    }
    if s.starts_with("<!--") {
        let len = s.find("-->").map(|p| p + 3).unwrap_or(s.len());
        return Some(ScannedTag {
            name: String::new(),
            is_close: false,
            is_comment_or_decl: true,
            len,
        });
    }
    if bytes[1] == b'!' || bytes[1] == b'?' {
        let len = s.find('>').map(|p| p + 1).unwrap_or(s.len());
        return Some(ScannedTag {
            name: String::new(),
            is_close: false,
            is_comment_or_decl: true,
            len,
        });
    }
    let (is_close, name_at) = if bytes[1] == b'/' { (true, 2) } else { (false, 1) };
    if name_at >= bytes.len() || !bytes[name_at].is_ascii_alphabetic() {
        return None;
    }
    let mut end = name_at;
    while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'-') {
        end += 1;
    }
    let name = s[name_at..end].to_ascii_lowercase();
    // An unterminated tag is stripped to end of input.
    let len = s.find('>').map(|p| p + 1).unwrap_or(s.len());
    Some(ScannedTag {
        name,
        is_close,
        is_comment_or_decl: false,
        len,
    })
}

fn next_char_len(s: &str, at: usize) -> usize {
    s[at..].chars().next().map(char::len_utf8).unwrap_or(1)
}

/// A token from [`tokenize_with_punct`]: either a word or a punctuation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawToken {
    /// Original-case slice of the input.
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub is_word: bool,
}

/// Tokenize and remove stopwords. Tokens are maximal runs of letters,
/// digits and interior apostrophes; `surface` is lowercased; offsets are
/// character offsets into the original text.
pub fn tokenize(text: &str, stopwords: &StopwordList) -> Vec<Token> {
    let mut tokens = Vec::new();
    for raw in word_runs(text) {
        let surface = raw.text.to_lowercase();
        if stopwords.contains(&surface) {
            continue;
        }
        tokens.push(Token {
            surface,
            start: raw.start,
            end: raw.end,
            index: tokens.len(),
        });
    }
    tokens
}

/// Tokenize keeping every word (no stopword removal).
pub fn tokenize_all(text: &str) -> Vec<Token> {
    tokenize(text, &StopwordList::empty())
}

/// Tokenize into words *and* punctuation tokens (whitespace skipped).
/// Each punctuation character is its own token. Used by the POS tagger.
pub fn tokenize_with_punct(text: &str) -> Vec<RawToken> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if is_word_char(&chars, i) {
            let start = i;
            while i < chars.len() && is_word_char(&chars, i) {
                i += 1;
            }
            out.push(RawToken {
                text: chars[start..i].iter().collect(),
                start,
                end: i,
                is_word: true,
            });
        } else {
            out.push(RawToken {
                text: c.to_string(),
                start: i,
                end: i + 1,
                is_word: false,
            });
            i += 1;
        }
    }
    out
}

fn word_runs(text: &str) -> Vec<RawToken> {
    tokenize_with_punct(text)
        .into_iter()
        .filter(|t| t.is_word)
        .collect()
}

fn is_word_char(chars: &[char], at: usize) -> bool {
    let c = chars[at];
    if c.is_alphanumeric() {
        return true;
    }
    if c == '\'' || c == '\u{2019}' {
        // Apostrophes join a token only between two alphanumerics: don't,
        // o'clock — but not quoting marks.
        let prev = at.checked_sub(1).map(|p| chars[p]);
        let next = chars.get(at + 1);
        return matches!(prev, Some(p) if p.is_alphanumeric())
            && matches!(next, Some(n) if n.is_alphanumeric());
    }
    false
}

const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "inc", "ltd", "co", "corp",
    "dept", "univ", "approx", "fig", "vol", "no", "jan", "feb", "mar", "apr", "jun", "jul", "aug",
    "sep", "sept", "oct", "nov", "dec",
];

/// Split text into sentences. A sentence ends at `.`, `!` or `?` followed
/// by whitespace and an uppercase letter (or end of input); a period after
/// a known abbreviation does not split.
pub fn split_sentences(text: &str) -> Vec<Sentence> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if matches!(c, '.' | '!' | '?') {
            // Include any immediately-following closing quotes/brackets.
            let mut end = i + 1;
            while end < chars.len() && matches!(chars[end], '"' | '\'' | ')' | ']') {
                end += 1;
            }
            if splits_here(&chars, i, end, start) {
                push_sentence(&chars, start, end, &mut sentences);
                start = end;
                i = end;
                continue;
            }
        }
        i += 1;
    }
    if start < chars.len() {
        push_sentence(&chars, start, chars.len(), &mut sentences);
    }
    sentences
}

fn splits_here(chars: &[char], punct: usize, end: usize, sent_start: usize) -> bool {
    if chars[punct] == '.' && is_abbreviation(chars, punct, sent_start) {
        return false;
    }
    let mut j = end;
    let mut saw_space = false;
    while j < chars.len() && chars[j].is_whitespace() {
        saw_space = true;
        j += 1;
    }
    if j >= chars.len() {
        return true; // end of text
    }
    saw_space && chars[j].is_uppercase()
}

fn is_abbreviation(chars: &[char], punct: usize, sent_start: usize) -> bool {
    let mut w = punct;
    while w > sent_start && chars[w - 1].is_alphabetic() {
        w -= 1;
    }
    if w == punct {
        return false;
    }
    let word: String = chars[w..punct].iter().collect::<String>().to_lowercase();
    ABBREVIATIONS.contains(&word.as_str())
}

fn push_sentence(chars: &[char], from: usize, to: usize, out: &mut Vec<Sentence>) {
    let mut start = from;
    while start < to && chars[start].is_whitespace() {
        start += 1;
    }
    let mut end = to;
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if start >= end {
        return;
    }
    out.push(Sentence {
        text: chars[start..end].iter().collect(),
        start,
        end,
        index: out.len(),
    });
}

/// Floor applied to reference frequencies of unseen terms.
const KEYNESS_EPSILON: f64 = 1e-6;

/// Extract keywords: one per distinct non-stopword token, scored by the
/// ratio of the in-document relative frequency to the reference relative
/// frequency (floored at epsilon for unseen terms). Without a reference the
/// raw frequency is the score. Sorted by score descending, ties broken
/// lexicographically.
pub fn extract_keywords(
    doc: &Document,
    stopwords: &StopwordList,
    reference: Option<&FreqTable>,
) -> Vec<Keyword> {
    let tokens = tokenize(&doc.text, stopwords);
    let total = tokens.len();
    if total == 0 {
        return Vec::new();
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for tok in tokens {
        *counts.entry(tok.surface).or_insert(0) += 1;
    }
    let mut keywords: Vec<Keyword> = counts
        .into_iter()
        .map(|(term, frequency)| {
            let score = match reference {
                None => frequency as f64,
                Some(table) => {
                    let doc_rel = frequency as f64 / total as f64;
                    let ref_rel = table.get(&term).unwrap_or(0.0).max(KEYNESS_EPSILON);
                    doc_rel / ref_rel
                }
            };
            Keyword {
                term,
                frequency,
                score,
            }
        })
        .collect();
    keywords.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.term.cmp(&b.term))
    });
    keywords
}
