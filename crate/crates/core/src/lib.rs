//! Curata: a data-curation toolkit.
//!
//! Transforms raw text records into curated records: tokens, keywords,
//! named entities, POS tags, stems, synonyms, fetched URL content,
//! similarity scores, classifications, index entries, knowledge-base
//! links and an entity graph connecting related records.
//!
//! The crate is organised as independent services that compose into the
//! [`pipeline`] module:
//!
//! - [`text`] — format stripping, tokenization, sentence splitting, keywords
//! - [`ner`] — gazetteer- and pattern-based named-entity extraction
//! - [`lexical`] — POS tagging, stemming, word forms, synonyms
//! - [`html`] — tolerant HTML parsing and page content extraction
//! - [`similarity`] — string/set/vector metrics and TF-IDF retrieval
//! - [`index`] — positional inverted index with slop phrase search
//! - [`classify`] — ARFF data, Naive Bayes, kNN and evaluation
//! - [`linking`] — Wikidata / Google KG / ConceptNet clients and entity linking
//! - [`pipeline`] — record enrichment, result.xml / JSON output, entity graph

pub mod classify;
pub mod html;
pub mod index;
pub mod lexical;
pub mod linking;
pub mod ner;
pub mod pipeline;
pub mod similarity;
pub mod text;

pub(crate) mod entities;

pub use ner::{EntityType, Gazetteer, NamedEntity};
pub use text::{Document, Keyword, Sentence, StopwordList, Token};
