//! Word-forms database: derived forms (noun, verb, adjective, adverb) of
//! a lemma, looked up through any column.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::LexicalError;

/// One database row. At least one form is always present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordForms {
    pub lemma: String,
    pub noun: Option<String>,
    pub verb: Option<String>,
    pub adjective: Option<String>,
    pub adverb: Option<String>,
}

impl WordForms {
    fn forms(&self) -> impl Iterator<Item = &String> {
        [
            Some(&self.lemma),
            self.noun.as_ref(),
            self.verb.as_ref(),
            self.adjective.as_ref(),
            self.adverb.as_ref(),
        ]
        .into_iter()
        .flatten()
    }
}

/// Rows indexed by every column value (lowercased).
#[derive(Debug, Clone, Default)]
pub struct WordFormsDb {
    rows: Vec<WordForms>,
    by_form: HashMap<String, usize>,
}

const DEFAULT_WORDFORMS: &str = include_str!("../../resources/wordforms.tsv");

impl WordFormsDb {
    /// The word-forms fixture shipped with the crate.
    pub fn builtin() -> Self {
        WordFormsDb::parse(DEFAULT_WORDFORMS, "<builtin>").expect("bundled word forms are valid")
    }

    /// Load TSV `lemma<TAB>noun<TAB>verb<TAB>adjective<TAB>adverb`;
    /// empty cells are allowed.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, LexicalError> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|e| LexicalError::io(path, e))?;
        WordFormsDb::parse(&raw, &path.display().to_string())
    }

    pub fn parse(raw: &str, origin: &str) -> Result<Self, LexicalError> {
        let mut db = WordFormsDb::default();
        for (lineno, line) in raw.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cells = line.split('\t');
            let lemma = cells.next().unwrap_or("").trim().to_lowercase();
            if lemma.is_empty() {
                return Err(LexicalError::Parse {
                    path: origin.to_string(),
                    line: lineno + 1,
                    message: "missing lemma".to_string(),
                });
            }
            let mut cell = || {
                cells
                    .next()
                    .map(|c| c.trim().to_lowercase())
                    .filter(|c| !c.is_empty())
            };
            let row = WordForms {
                lemma,
                noun: cell(),
                verb: cell(),
                adjective: cell(),
                adverb: cell(),
            };
            let at = db.rows.len();
            for form in row.forms() {
                db.by_form.entry(form.clone()).or_insert(at);
            }
            db.rows.push(row);
        }
        Ok(db)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Exact lowercase lookup of `word` against every column; the full row is
/// returned. `None` means the word is absent (not an error).
pub fn derived_forms(word: &str, db: &WordFormsDb) -> Option<WordForms> {
    db.by_form
        .get(&word.to_lowercase())
        .map(|&i| db.rows[i].clone())
}
