//! Lexicon-driven POS tagging, suffix-stripping stemming, word-forms
//! lookup and synonym/hypernym lookup.

mod pos;
mod stem;
mod synset;
mod wordforms;

pub use pos::{
    extract_phrases, extract_pos_class, extract_quotation, tag_pos, Chunk, ChunkLabel, ChunkTree,
    PosLexicon, PosTag, TaggedToken,
};
pub use stem::stem;
pub use synset::{hypernyms, synonyms, synonyms_text, SynsetLexicon};
pub use wordforms::{derived_forms, WordForms, WordFormsDb};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexicalError {
    #[error("{0}")]
    Argument(String),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

impl LexicalError {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        LexicalError::Argument(msg.into())
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        LexicalError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
