//! TF-IDF weighting, sentence search and document cosine ranking.
//!
//! tf is the in-document count divided by the document length; idf is the
//! natural logarithm of the corpus size over the document frequency.
//! Terms absent from the corpus weigh zero.

use std::collections::BTreeMap;

use super::{cosine_vec, NumericVector, SimilarityError};
use crate::text::tokenize_all;

#[derive(Debug, Clone, Default)]
struct DocEntry {
    counts: BTreeMap<String, usize>,
    len: usize,
}

/// An immutable TF-IDF index over a corpus of identified texts.
#[derive(Debug, Clone, Default)]
pub struct TfIdfIndex {
    docs: BTreeMap<String, DocEntry>,
    df: BTreeMap<String, usize>,
}

impl TfIdfIndex {
    /// Build from `(id, text)` pairs. Tokenization keeps every word; a
    /// later stopword pass would skew the frequencies the weights divide by.
    pub fn build<I, S1, S2>(docs: I) -> Self
    where
        I: IntoIterator<Item = (S1, S2)>,
        S1: Into<String>,
        S2: AsRef<str>,
    {
        let mut index = TfIdfIndex::default();
        for (id, text) in docs {
            index.add(id.into(), text.as_ref());
        }
        index
    }

    fn add(&mut self, id: String, text: &str) {
        let mut entry = DocEntry::default();
        for token in tokenize_all(text) {
            *entry.counts.entry(token.surface).or_insert(0) += 1;
            entry.len += 1;
        }
        for term in entry.counts.keys() {
            *self.df.entry(term.clone()).or_insert(0) += 1;
        }
        self.docs.insert(id, entry);
    }

    pub fn doc_count(&self) -> usize {
        self.docs.len()
    }

    pub fn df(&self, term: &str) -> usize {
        self.df.get(&term.to_lowercase()).copied().unwrap_or(0)
    }

    pub fn doc_ids(&self) -> impl Iterator<Item = &str> {
        self.docs.keys().map(String::as_str)
    }

    fn idf(&self, term: &str) -> f64 {
        let df = self.df(term);
        if df == 0 {
            return 0.0;
        }
        (self.docs.len() as f64 / df as f64).ln()
    }
}

/// tf·idf weight of `term` within `doc_id`; zero for unknown terms or
/// documents.
pub fn tfidf_weight(term: &str, doc_id: &str, index: &TfIdfIndex) -> f64 {
    let term = term.to_lowercase();
    let Some(doc) = index.docs.get(doc_id) else {
        return 0.0;
    };
    if doc.len == 0 {
        return 0.0;
    }
    let count = doc.counts.get(&term).copied().unwrap_or(0);
    if count == 0 {
        return 0.0;
    }
    let tf = count as f64 / doc.len as f64;
    tf * index.idf(&term)
}

/// Score every indexed text by the summed tf·idf weight of the query terms;
/// descending, ties broken by id.
pub fn tfidf_search(query: &str, index: &TfIdfIndex) -> Result<Vec<(String, f64)>, SimilarityError> {
    if index.docs.is_empty() {
        return Err(SimilarityError::EmptyIndex);
    }
    let terms: Vec<String> = tokenize_all(query).into_iter().map(|t| t.surface).collect();
    let mut scored: Vec<(String, f64)> = index
        .docs
        .keys()
        .map(|id| {
            let score = terms.iter().map(|t| tfidf_weight(t, id, index)).sum();
            (id.clone(), score)
        })
        .collect();
    scored.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(scored)
}

/// Rank corpus documents by the cosine of their tf·idf vectors against the
/// query document's. The idf component comes from the corpus.
pub fn cosine_docs(
    query: &str,
    corpus: &[(String, String)],
) -> Result<Vec<(String, f64)>, SimilarityError> {
    if corpus.is_empty() {
        return Err(SimilarityError::EmptyIndex);
    }
    let index = TfIdfIndex::build(corpus.iter().map(|(id, text)| (id.clone(), text.as_str())));

    // A shared vocabulary keeps every vector in the same space.
    let vocab: Vec<String> = index.df.keys().cloned().collect();
    let vector_of = |counts: &BTreeMap<String, usize>, len: usize| -> Vec<f64> {
        vocab
            .iter()
            .map(|term| {
                let count = counts.get(term).copied().unwrap_or(0);
                if count == 0 || len == 0 {
                    0.0
                } else {
                    (count as f64 / len as f64) * index.idf(term)
                }
            })
            .collect()
    };

    let mut query_entry = DocEntry::default();
    for token in tokenize_all(query) {
        *query_entry.counts.entry(token.surface).or_insert(0) += 1;
        query_entry.len += 1;
    }
    let query_vec = vector_of(&query_entry.counts, query_entry.len);

    let mut ranked: Vec<(String, f64)> = index
        .docs
        .iter()
        .map(|(id, entry)| {
            let doc_vec = vector_of(&entry.counts, entry.len);
            let score = match (
                NumericVector::new(query_vec.clone()),
                NumericVector::new(doc_vec),
            ) {
                (Ok(q), Ok(d)) => cosine_vec(&q, &d).unwrap_or(0.0),
                _ => 0.0,
            };
            (id.clone(), score)
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_formula_by_hand() {
        let index = TfIdfIndex::build([("d1", "a b a"), ("d2", "b c"), ("d3", "c d")]);
        // term a: tf = 2/3, df = 1, idf = ln(3)
        let w = tfidf_weight("a", "d1", &index);
        assert!((w - (2.0 / 3.0) * 3f64.ln()).abs() < 1e-9);
        assert_eq!(tfidf_weight("zzz", "d1", &index), 0.0);
        assert_eq!(tfidf_weight("a", "nope", &index), 0.0);
    }

    #[test]
    fn search_absent_terms_score_zero() {
        let index = TfIdfIndex::build([("d1", "a b"), ("d2", "c d")]);
        let hits = tfidf_search("zzz qqq", &index).unwrap();
        assert!(hits.iter().all(|(_, s)| *s == 0.0));
        // Ties broken by id.
        assert_eq!(hits[0].0, "d1");
    }

    #[test]
    fn search_empty_index_is_state_error() {
        let index = TfIdfIndex::default();
        assert!(matches!(
            tfidf_search("a", &index),
            Err(SimilarityError::EmptyIndex)
        ));
    }

    #[test]
    fn cosine_docs_ranks_matching_doc_first() {
        let corpus = vec![
            ("d1".to_string(), "x x".to_string()),
            ("d2".to_string(), "y".to_string()),
        ];
        let ranked = cosine_docs("x", &corpus).unwrap();
        assert_eq!(ranked[0].0, "d1");
        assert!(ranked[0].1 > ranked[1].1);
    }
}
