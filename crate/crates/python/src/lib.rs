//! Python bindings for the curation toolkit.
//!
//! Exposes the main operations as plain functions plus an `Index` class
//! for positional phrase search.

use std::str::FromStr;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use curata_core::classify as cls;
use curata_core::html;
use curata_core::index as idx;
use curata_core::lexical;
use curata_core::linking;
use curata_core::ner;
use curata_core::similarity as sim;
use curata_core::text;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn io_err(e: impl std::fmt::Display) -> PyErr {
    PyIOError::new_err(e.to_string())
}

fn stopword_list(stopwords: Option<Vec<String>>) -> text::StopwordList {
    match stopwords {
        Some(words) => text::StopwordList::from_words(words),
        None => text::StopwordList::english(),
    }
}

/// Tokenize text into (surface, start, end) triples; stopwords default to
/// the built-in English list, pass [] to keep everything.
#[pyfunction]
#[pyo3(signature = (text, stopwords=None))]
fn tokenize(text: &str, stopwords: Option<Vec<String>>) -> Vec<(String, usize, usize)> {
    text::tokenize(text, &stopword_list(stopwords))
        .into_iter()
        .map(|t| (t.surface, t.start, t.end))
        .collect()
}

#[pyfunction]
fn split_sentences(text: &str) -> Vec<String> {
    text::split_sentences(text).into_iter().map(|s| s.text).collect()
}

/// Strip formatting; kind is "html" or "plain".
#[pyfunction]
#[pyo3(signature = (raw, kind="html"))]
fn strip_format(raw: &str, kind: &str) -> PyResult<String> {
    let kind = text::TextKind::from_str(kind).map_err(value_err)?;
    Ok(text::strip_format(raw, kind))
}

/// Keywords of a text as (term, frequency, score), best first.
#[pyfunction]
#[pyo3(signature = (text, stopwords=None))]
fn extract_keywords(text: &str, stopwords: Option<Vec<String>>) -> Vec<(String, usize, f64)> {
    let doc = text::Document::new("doc", text);
    text::extract_keywords(&doc, &stopword_list(stopwords), None)
        .into_iter()
        .map(|k| (k.term, k.frequency, k.score))
        .collect()
}

/// Named entities as (word, type, start, end); uses the built-in
/// gazetteer unless a file path is given.
#[pyfunction]
#[pyo3(signature = (text, gazetteer_path=None))]
fn extract_entities(
    text: &str,
    gazetteer_path: Option<&str>,
) -> PyResult<Vec<(String, String, usize, usize)>> {
    let gazetteer = match gazetteer_path {
        Some(path) => ner::Gazetteer::load(path).map_err(io_err)?,
        None => ner::Gazetteer::builtin(),
    };
    Ok(ner::extract_entities(text, &gazetteer)
        .into_iter()
        .map(|e| (e.word, e.ner.to_string(), e.start, e.end))
        .collect())
}

#[pyfunction]
fn extract_emails(text: &str) -> Vec<String> {
    ner::extract_emails(text)
}

#[pyfunction]
fn extract_ips(text: &str) -> Vec<String> {
    ner::extract_ips(text)
}

/// POS tags as (word, tag) using the built-in lexicon.
#[pyfunction]
fn tag_pos(text: &str) -> Vec<(String, String)> {
    let lexicon = lexical::PosLexicon::builtin();
    lexical::tag_pos(text, &lexicon)
        .into_iter()
        .map(|t| (t.word_part, t.tag.to_string()))
        .collect()
}

#[pyfunction]
fn stem(word: &str) -> PyResult<String> {
    lexical::stem(word).map_err(value_err)
}

#[pyfunction]
fn synonyms(word: &str) -> Vec<String> {
    lexical::synonyms(word, &lexical::SynsetLexicon::builtin())
}

#[pyfunction]
fn hypernyms(word: &str) -> Vec<String> {
    lexical::hypernyms(word, &lexical::SynsetLexicon::builtin())
}

type FormsTuple = (String, Option<String>, Option<String>, Option<String>, Option<String>);

/// Derived forms of a word as (lemma, noun, verb, adjective, adverb), or
/// None when the word is not in the database.
#[pyfunction]
fn derived_forms(word: &str) -> Option<FormsTuple> {
    lexical::derived_forms(word, &lexical::WordFormsDb::builtin())
        .map(|f| (f.lemma, f.noun, f.verb, f.adjective, f.adverb))
}

#[pyfunction]
#[pyo3(signature = (a, b, transpositions=false))]
fn levenshtein(a: &str, b: &str, transpositions: bool) -> usize {
    sim::levenshtein(a, b, transpositions)
}

#[pyfunction]
fn jaro(a: &str, b: &str) -> f64 {
    sim::jaro(a, b)
}

#[pyfunction]
fn soundex(word: &str) -> PyResult<String> {
    Ok(sim::soundex(word).map_err(value_err)?.to_string())
}

#[pyfunction]
fn soundex_sim(a: &str, b: &str) -> PyResult<f64> {
    sim::soundex_sim(a, b).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (a, b, q=2))]
fn qgram(a: &str, b: &str, q: usize) -> PyResult<f64> {
    sim::qgram(a, b, q).map_err(value_err)
}

/// Jaccard similarity of the token sets of two texts.
#[pyfunction]
fn jaccard(a: &str, b: &str) -> f64 {
    sim::jaccard_tokens(a, b)
}

#[pyfunction]
fn dice(a: &str, b: &str) -> f64 {
    sim::dice_tokens(a, b)
}

#[pyfunction]
fn cosine(v1: Vec<f64>, v2: Vec<f64>) -> PyResult<f64> {
    let a = sim::NumericVector::new(v1).map_err(value_err)?;
    let b = sim::NumericVector::new(v2).map_err(value_err)?;
    sim::cosine_vec(&a, &b).map_err(value_err)
}

#[pyfunction]
fn euclidean(v1: Vec<f64>, v2: Vec<f64>) -> PyResult<f64> {
    let a = sim::NumericVector::new(v1).map_err(value_err)?;
    let b = sim::NumericVector::new(v2).map_err(value_err)?;
    sim::euclidean(&a, &b).map_err(value_err)
}

/// Rank (id, text) documents against a query by summed tf-idf weight.
#[pyfunction]
fn tfidf_search(query: &str, docs: Vec<(String, String)>) -> PyResult<Vec<(String, f64)>> {
    let index = sim::TfIdfIndex::build(docs);
    sim::tfidf_search(query, &index).map_err(value_err)
}

/// Rank (id, text) documents by the cosine of their tf-idf vectors
/// against the query document.
#[pyfunction]
fn cosine_docs(query: &str, docs: Vec<(String, String)>) -> PyResult<Vec<(String, f64)>> {
    sim::cosine_docs(query, &docs).map_err(value_err)
}

/// Classify a test ARFF file with Naive Bayes trained on another;
/// returns (index, label, confidence) per test row.
#[pyfunction]
fn nb_classify(train_path: &str, test_path: &str) -> PyResult<Vec<(usize, String, f64)>> {
    let train = cls::parse_arff(train_path).map_err(io_err)?;
    let test = cls::parse_arff(test_path).map_err(io_err)?;
    let model = cls::train_nb(&train).map_err(value_err)?;
    Ok(cls::predict_nb(&model, &test)
        .map_err(value_err)?
        .into_iter()
        .map(|p| (p.index, p.label, p.confidence))
        .collect())
}

#[pyfunction]
fn knn_classify(train_path: &str, test_path: &str, k: usize) -> PyResult<Vec<(usize, String, f64)>> {
    let train = cls::parse_arff(train_path).map_err(io_err)?;
    let test = cls::parse_arff(test_path).map_err(io_err)?;
    Ok(cls::knn_predict(&train, &test, k)
        .map_err(value_err)?
        .into_iter()
        .map(|p| (p.index, p.label, p.confidence))
        .collect())
}

/// Compare predicted against actual labels; returns a dict with
/// accuracy, precision, recall and per-class counts.
#[pyfunction]
fn evaluate_labels<'py>(
    py: Python<'py>,
    predicted: Vec<String>,
    actual: Vec<String>,
) -> PyResult<Bound<'py, PyDict>> {
    let report = cls::evaluate(&predicted, &actual).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("accuracy", report.accuracy)?;
    out.set_item("precision", report.precision)?;
    out.set_item("recall", report.recall)?;
    let per_class = PyDict::new(py);
    for (class, counts) in &report.per_class {
        per_class.set_item(
            class,
            (counts.true_pos, counts.false_pos, counts.false_neg),
        )?;
    }
    out.set_item("per_class", per_class)?;
    Ok(out)
}

/// Parse HTML and return a dict of extracted page content.
#[pyfunction]
fn html_extract<'py>(py: Python<'py>, html_text: &str) -> PyResult<Bound<'py, PyDict>> {
    let page = html::extract_page(&html::parse(html_text));
    let out = PyDict::new(py);
    out.set_item("title", page.title)?;
    out.set_item(
        "headings",
        page.headings
            .into_iter()
            .map(|h| (h.level, h.text))
            .collect::<Vec<_>>(),
    )?;
    out.set_item("paragraphs", page.paragraphs)?;
    out.set_item("anchors", page.anchor_texts)?;
    out.set_item("image_alts", page.image_alts)?;
    out.set_item("list_items", page.list_items)?;
    Ok(out)
}

/// Score entity candidates against a mention; returns (label, score)
/// pairs above the threshold, best first. metric is jaro,
/// levenshtein_norm or soundex.
#[pyfunction]
#[pyo3(signature = (mention, candidates, metric="jaro", threshold=0.7))]
fn link_candidates(
    mention: &str,
    candidates: Vec<String>,
    metric: &str,
    threshold: f64,
) -> PyResult<Vec<(String, f64)>> {
    let metric = linking::LinkMetric::from_str(metric).map_err(value_err)?;
    let entities: Vec<linking::KbEntity> = candidates
        .into_iter()
        .map(|label| linking::KbEntity {
            provider: linking::Provider::Wikidata,
            id: label.clone(),
            label,
            description: None,
            url: None,
        })
        .collect();
    Ok(linking::link_entity(mention, &entities, metric, threshold)
        .map_err(value_err)?
        .into_iter()
        .map(|c| (c.entity.label, c.score))
        .collect())
}

/// A positional inverted index with slop-bounded phrase search.
#[pyclass]
struct Index {
    inner: idx::InvertedIndex,
    stopwords: text::StopwordList,
}

#[pymethods]
impl Index {
    /// Stopwords default to the built-in English list; pass [] to index
    /// every token.
    #[new]
    #[pyo3(signature = (stopwords=None))]
    fn new(stopwords: Option<Vec<String>>) -> Self {
        Index {
            inner: idx::InvertedIndex::default(),
            stopwords: stopword_list(stopwords),
        }
    }

    fn add(&mut self, doc_id: &str, text_body: &str) -> PyResult<()> {
        self.inner
            .add_document(&text::Document::new(doc_id, text_body), &self.stopwords)
            .map_err(value_err)
    }

    /// Matches as (doc_id, spread, sentence), best first.
    #[pyo3(signature = (query, slop=0))]
    fn search(&self, query: &str, slop: u32) -> PyResult<Vec<(String, u32, String)>> {
        Ok(idx::search(&idx::SlopQuery::parse(query, slop), &self.inner)
            .map_err(value_err)?
            .into_iter()
            .map(|h| (h.doc_id, h.spread, h.sentence))
            .collect())
    }

    fn save(&self, path: &str) -> PyResult<()> {
        self.inner.persist(path).map_err(io_err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Index {
            inner: idx::InvertedIndex::load(path).map_err(io_err)?,
            stopwords: text::StopwordList::english(),
        })
    }

    #[getter]
    fn doc_count(&self) -> usize {
        self.inner.doc_count()
    }

    fn __len__(&self) -> usize {
        self.inner.doc_count()
    }
}

#[pymodule]
fn curata_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(split_sentences, m)?)?;
    m.add_function(wrap_pyfunction!(strip_format, m)?)?;
    m.add_function(wrap_pyfunction!(extract_keywords, m)?)?;
    m.add_function(wrap_pyfunction!(extract_entities, m)?)?;
    m.add_function(wrap_pyfunction!(extract_emails, m)?)?;
    m.add_function(wrap_pyfunction!(extract_ips, m)?)?;
    m.add_function(wrap_pyfunction!(tag_pos, m)?)?;
    m.add_function(wrap_pyfunction!(stem, m)?)?;
    m.add_function(wrap_pyfunction!(synonyms, m)?)?;
    m.add_function(wrap_pyfunction!(hypernyms, m)?)?;
    m.add_function(wrap_pyfunction!(derived_forms, m)?)?;
    m.add_function(wrap_pyfunction!(levenshtein, m)?)?;
    m.add_function(wrap_pyfunction!(jaro, m)?)?;
    m.add_function(wrap_pyfunction!(soundex, m)?)?;
    m.add_function(wrap_pyfunction!(soundex_sim, m)?)?;
    m.add_function(wrap_pyfunction!(qgram, m)?)?;
    m.add_function(wrap_pyfunction!(jaccard, m)?)?;
    m.add_function(wrap_pyfunction!(dice, m)?)?;
    m.add_function(wrap_pyfunction!(cosine, m)?)?;
    m.add_function(wrap_pyfunction!(euclidean, m)?)?;
    m.add_function(wrap_pyfunction!(tfidf_search, m)?)?;
    m.add_function(wrap_pyfunction!(cosine_docs, m)?)?;
    m.add_function(wrap_pyfunction!(nb_classify, m)?)?;
    m.add_function(wrap_pyfunction!(knn_classify, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_labels, m)?)?;
    m.add_function(wrap_pyfunction!(html_extract, m)?)?;
    m.add_function(wrap_pyfunction!(link_candidates, m)?)?;
    m.add_class::<Index>()?;
    Ok(())
}
