//! Tolerant HTML parsing and page content extraction.
//!
//! Any byte sequence parses to a document tree: unclosed tags are closed
//! at their parent boundary, stray close tags are ignored, and
//! script/style bodies never reach the text runs.

mod fetch;
mod parser;

pub use fetch::{fetch, FetchError, Fetcher, FixtureFetcher, HttpFetcher};
pub(crate) use fetch::fixture_encode;
pub use parser::{parse, Element, HtmlDocument, Node};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HtmlError {
    #[error("paragraph index {index} out of range (document has {count})")]
    ParagraphRange { index: usize, count: usize },
}

/// One `h1`..`h4` heading with its level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Heading {
    pub level: u8,
    pub text: String,
}

/// Everything the page extractors pull from one document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageExtract {
    pub title: Option<String>,
    pub headings: Vec<Heading>,
    pub paragraphs: Vec<String>,
    pub anchor_texts: Vec<String>,
    pub image_alts: Vec<String>,
    pub list_items: Vec<String>,
}

/// Collapse whitespace runs to single spaces and trim.
fn normalize_ws(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Title of the first `title` element, whitespace-normalized.
pub fn extract_title(doc: &HtmlDocument) -> Option<String> {
    doc.find_all("title")
        .first()
        .map(|el| normalize_ws(&el.text_content()))
}

/// `h1`..`h4` headings in document order.
pub fn extract_headings(doc: &HtmlDocument) -> Vec<Heading> {
    let mut out = Vec::new();
    doc.walk(&mut |el| {
        if let Some(level) = match el.name.as_str() {
            "h1" => Some(1),
            "h2" => Some(2),
            "h3" => Some(3),
            "h4" => Some(4),
            _ => None,
        } {
            out.push(Heading {
                level,
                text: normalize_ws(&el.text_content()),
            });
        }
    });
    out
}

/// Text of every `p` element in document order.
pub fn extract_paragraphs(doc: &HtmlDocument) -> Vec<String> {
    doc.find_all("p")
        .iter()
        .map(|el| normalize_ws(&el.text_content()))
        .collect()
}

/// The `i`-th paragraph (0-based).
pub fn extract_paragraph_at(doc: &HtmlDocument, index: usize) -> Result<String, HtmlError> {
    let paragraphs = extract_paragraphs(doc);
    let count = paragraphs.len();
    paragraphs
        .into_iter()
        .nth(index)
        .ok_or(HtmlError::ParagraphRange { index, count })
}

/// Text of every `a` element.
pub fn extract_anchor_texts(doc: &HtmlDocument) -> Vec<String> {
    doc.find_all("a")
        .iter()
        .map(|el| normalize_ws(&el.text_content()))
        .collect()
}

/// `alt` attributes of `img` elements.
pub fn extract_image_alts(doc: &HtmlDocument) -> Vec<String> {
    let mut out = Vec::new();
    doc.walk(&mut |el| {
        if el.name == "img" {
            if let Some(alt) = el.attr("alt") {
                out.push(normalize_ws(alt));
            }
        }
    });
    out
}

/// Text of `li` items under `ul` lists.
pub fn extract_list_texts(doc: &HtmlDocument) -> Vec<String> {
    let mut out = Vec::new();
    doc.walk(&mut |el| {
        if el.name == "ul" {
            for child in el.children.iter() {
                if let Node::Element(li) = child {
                    if li.name == "li" {
                        out.push(normalize_ws(&li.text_content()));
                    }
                }
            }
        }
    });
    out
}

/// Run every extractor over an already-parsed document.
pub fn extract_page(doc: &HtmlDocument) -> PageExtract {
    PageExtract {
        title: extract_title(doc),
        headings: extract_headings(doc),
        paragraphs: extract_paragraphs(doc),
        anchor_texts: extract_anchor_texts(doc),
        image_alts: extract_image_alts(doc),
        list_items: extract_list_texts(doc),
    }
}
