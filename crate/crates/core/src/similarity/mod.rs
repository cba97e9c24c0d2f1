//! Similarity functions: string metrics, phonetic encoding, q-grams,
//! set metrics, numeric-vector metrics and TF-IDF retrieval.

mod strings;
mod tfidf;
mod vectors;

pub use strings::{
    dice_sets, dice_tokens, hamming, jaccard_sets, jaccard_tokens, jaro, levenshtein,
    levenshtein_normalized, qgram, soundex, soundex_sim, SoundexCode,
};
pub use tfidf::{cosine_docs, tfidf_search, tfidf_weight, TfIdfIndex};
pub use vectors::{
    batch_vector, cosine_vec, dice_vec, euclidean, jaccard_vec, BatchInput, BatchMetric,
    NumericVector, SimilarityResult, VectorFile,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimilarityError {
    #[error("{0}")]
    Argument(String),
    #[error("vector file {path} line {line}: {message}")]
    VectorFile {
        path: String,
        line: usize,
        message: String,
    },
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("index is empty")]
    EmptyIndex,
}

impl SimilarityError {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        SimilarityError::Argument(msg.into())
    }
}
