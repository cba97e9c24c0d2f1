//! Synonym and hypernym lookup over a synset lexicon.
//!
//! The lexicon is a portable TSV (`word<TAB>SYN|HYP<TAB>target`), one
//! relation per line. Synonymy is symmetrized at load time.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use super::LexicalError;
use crate::text::{tokenize, StopwordList};

#[derive(Debug, Clone, Default)]
struct SynsetEntry {
    synonyms: BTreeSet<String>,
    hypernyms: BTreeSet<String>,
}

/// word -> {synonyms, hypernyms}, case-insensitive.
#[derive(Debug, Clone, Default)]
pub struct SynsetLexicon {
    entries: BTreeMap<String, SynsetEntry>,
}

const DEFAULT_SYNSETS: &str = include_str!("../../resources/synsets.tsv");

impl SynsetLexicon {
    /// The synset fixture shipped with the crate.
    pub fn builtin() -> Self {
        SynsetLexicon::parse(DEFAULT_SYNSETS, "<builtin>").expect("bundled synsets are valid")
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, LexicalError> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|e| LexicalError::io(path, e))?;
        SynsetLexicon::parse(&raw, &path.display().to_string())
    }

    pub fn parse(raw: &str, origin: &str) -> Result<Self, LexicalError> {
        let mut lexicon = SynsetLexicon::default();
        for (lineno, line) in raw.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.splitn(3, '\t');
            let (word, rel, target) = match (parts.next(), parts.next(), parts.next()) {
                (Some(w), Some(r), Some(t)) => (w.trim(), r.trim(), t.trim()),
                _ => {
                    return Err(LexicalError::Parse {
                        path: origin.to_string(),
                        line: lineno + 1,
                        message: "expected word<TAB>SYN|HYP<TAB>target".to_string(),
                    })
                }
            };
            if word.is_empty() || target.is_empty() {
                return Err(LexicalError::Parse {
                    path: origin.to_string(),
                    line: lineno + 1,
                    message: "empty word or target".to_string(),
                });
            }
            let word = word.to_lowercase();
            let target = target.to_lowercase();
            match rel.to_ascii_uppercase().as_str() {
                "SYN" => {
                    if word != target {
                        lexicon.entry(&word).synonyms.insert(target.clone());
                        lexicon.entry(&target).synonyms.insert(word);
                    }
                }
                "HYP" => {
                    lexicon.entry(&word).hypernyms.insert(target);
                }
                other => {
                    return Err(LexicalError::Parse {
                        path: origin.to_string(),
                        line: lineno + 1,
                        message: format!("unknown relation {other:?}"),
                    })
                }
            }
        }
        Ok(lexicon)
    }

    fn entry(&mut self, word: &str) -> &mut SynsetEntry {
        self.entries.entry(word.to_string()).or_default()
    }

    pub fn word_count(&self) -> usize {
        self.entries.len()
    }

    fn get(&self, word: &str) -> Option<&SynsetEntry> {
        self.entries.get(&word.to_lowercase())
    }
}

/// Sorted, deduplicated synonyms of `word`; the word itself is excluded.
/// Unknown words yield an empty list.
pub fn synonyms(word: &str, lexicon: &SynsetLexicon) -> Vec<String> {
    lexicon
        .get(word)
        .map(|e| e.synonyms.iter().cloned().collect())
        .unwrap_or_default()
}

/// Sorted hypernyms of `word`; empty when unknown.
pub fn hypernyms(word: &str, lexicon: &SynsetLexicon) -> Vec<String> {
    lexicon
        .get(word)
        .map(|e| e.hypernyms.iter().cloned().collect())
        .unwrap_or_default()
}

/// One `(token, synonyms)` pair per distinct non-stopword token of the
/// text that has any synonyms, in first-occurrence order.
pub fn synonyms_text(text: &str, lexicon: &SynsetLexicon) -> Vec<(String, Vec<String>)> {
    let stopwords = StopwordList::english();
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for token in tokenize(text, &stopwords) {
        if seen.contains(&token.surface) {
            continue;
        }
        seen.push(token.surface.clone());
        let syns = synonyms(&token.surface, lexicon);
        if !syns.is_empty() {
            out.push((token.surface, syns));
        }
    }
    out
}
