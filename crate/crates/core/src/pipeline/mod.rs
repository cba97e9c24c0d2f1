//! End-to-end curation: ingest tweet-like records, enrich them with every
//! extractor, emit result.xml / records.json, and build the entity graph
//! connecting related records.

mod graph;
mod output;

pub use graph::{
    build_graph, find_paths, EdgeType, EntityGraph, GraphEdge, GraphNode, NodeType,
};
pub use output::{
    read_records_json, records_to_json, records_to_xml, validate_result_xml, write_records,
    OutputFormat,
};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::html::{extract_page, parse as parse_html, Fetcher, FixtureFetcher, HttpFetcher};
use crate::lexical::{
    stem, synonyms_text, tag_pos, PosLexicon, SynsetLexicon, TaggedToken, WordFormsDb,
};
use crate::linking::{link_entity, KbClient, LinkCandidate, LinkMetric, Provider};
use crate::ner::{extract_entities, EntityType, Gazetteer, NamedEntity};
use crate::similarity::SimilarityError;
use crate::text::{extract_keywords, tokenize, Document, FreqTable, Keyword, StopwordList};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no valid records in {path} ({skipped} lines skipped)")]
    NoRecords { path: String, skipped: usize },
    #[error("{0}")]
    Argument(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown user {0:?}")]
    UnknownUser(String),
}

impl From<SimilarityError> for PipelineError {
    fn from(e: SimilarityError) -> Self {
        PipelineError::Argument(e.to_string())
    }
}

/// The author of a record.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TweetUser {
    pub handle: String,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
}

/// One raw input record (one JSONL line).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub id: String,
    pub text: String,
    #[serde(default)]
    pub user: TweetUser,
    #[serde(default)]
    pub hashtags: Vec<String>,
    #[serde(default)]
    pub urls: Vec<String>,
    #[serde(default)]
    pub created_at: String,
}

/// Ingestion outcome: parsed records plus the count of skipped lines.
#[derive(Debug, Clone, Default)]
pub struct IngestReport {
    pub records: Vec<TweetRecord>,
    pub skipped: usize,
}

/// Read a JSONL file of records. Malformed lines (bad JSON, empty id,
/// duplicate id) are skipped and counted. With a keyword filter only
/// records whose text contains it (case-insensitively) are kept; with a
/// limit at most that many records are returned.
pub fn ingest(
    path: impl AsRef<Path>,
    keyword_filter: Option<&str>,
    limit: Option<usize>,
) -> Result<IngestReport, PipelineError> {
    let path = path.as_ref();
    let raw = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut report = IngestReport::default();
    let mut seen_ids = std::collections::HashSet::new();
    let needle = keyword_filter.map(str::to_lowercase);
    for line in raw.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let record: TweetRecord = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(_) => {
                report.skipped += 1;
                continue;
            }
        };
        if record.id.is_empty() || !seen_ids.insert(record.id.clone()) {
            report.skipped += 1;
            continue;
        }
        if let Some(needle) = &needle {
            if !record.text.to_lowercase().contains(needle) {
                continue;
            }
        }
        if let Some(limit) = limit {
            if report.records.len() >= limit {
                break;
            }
        }
        report.records.push(record);
    }
    if report.records.is_empty() && seen_ids.is_empty() {
        return Err(PipelineError::NoRecords {
            path: path.display().to_string(),
            skipped: report.skipped,
        });
    }
    Ok(report)
}

/// Content extracted from one URL mentioned in a record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UrlExtract {
    pub url: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extract: Option<crate::html::PageExtract>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// A fully enriched record: the analog of one result.xml `<tweet>` entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurationRecord {
    pub tweet: TweetRecord,
    pub entities: Vec<NamedEntity>,
    pub keywords: Vec<Keyword>,
    pub pos: Vec<TaggedToken>,
    pub stems: Vec<(String, String)>,
    pub synonyms: Vec<(String, Vec<String>)>,
    pub url_extracts: Vec<UrlExtract>,
    pub links: Vec<LinkCandidate>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// Everything enrichment needs: dictionaries, lexicons, and the optional
/// KB and fetch capabilities.
pub struct Resources {
    pub stopwords: StopwordList,
    pub gazetteer: Gazetteer,
    pub pos_lexicon: PosLexicon,
    pub synsets: SynsetLexicon,
    pub wordforms: WordFormsDb,
    pub reference: Option<FreqTable>,
    pub kb: Option<KbClient>,
    pub kb_provider: Provider,
    pub fetcher: Option<Box<dyn Fetcher + Send + Sync>>,
    pub link_metric: LinkMetric,
    pub link_threshold: f64,
}

impl std::fmt::Debug for Resources {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Resources")
            .field("gazetteer_entries", &self.gazetteer.entry_count())
            .field("kb", &self.kb.is_some())
            .field("fetcher", &self.fetcher.is_some())
            .finish()
    }
}

impl Resources {
    /// Built-in dictionaries only; no KB client, no fetching.
    pub fn builtin() -> Self {
        Resources {
            stopwords: StopwordList::english(),
            gazetteer: Gazetteer::builtin(),
            pos_lexicon: PosLexicon::builtin(),
            synsets: SynsetLexicon::builtin(),
            wordforms: WordFormsDb::builtin(),
            reference: None,
            kb: None,
            kb_provider: Provider::Wikidata,
            fetcher: None,
            link_metric: LinkMetric::Jaro,
            link_threshold: 0.7,
        }
    }

    /// Load overrides from a resources directory. Recognized files:
    /// `stopwords.txt`, `gazetteer.tsv`, `pos_lexicon.tsv` +
    /// `pos_suffix_rules.tsv`, `synsets.tsv`, `wordforms.tsv`,
    /// `reference_freqs.tsv`; an `html/` subdirectory enables offline URL
    /// fixtures (otherwise URLs are fetched live).
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self, PipelineError> {
        let dir = dir.as_ref();
        let mut res = Resources::builtin();
        let wrap_text = |e: crate::text::TextError| PipelineError::Argument(e.to_string());
        let wrap_lex = |e: crate::lexical::LexicalError| PipelineError::Argument(e.to_string());

        let stopwords = dir.join("stopwords.txt");
        if stopwords.is_file() {
            res.stopwords = StopwordList::from_file(&stopwords).map_err(wrap_text)?;
        }
        let gazetteer = dir.join("gazetteer.tsv");
        if gazetteer.is_file() {
            res.gazetteer = Gazetteer::load(&gazetteer)
                .map_err(|e| PipelineError::Argument(e.to_string()))?;
        }
        let lexicon = dir.join("pos_lexicon.tsv");
        let suffixes = dir.join("pos_suffix_rules.tsv");
        if lexicon.is_file() && suffixes.is_file() {
            res.pos_lexicon = PosLexicon::from_files(&lexicon, &suffixes).map_err(wrap_lex)?;
        }
        let synsets = dir.join("synsets.tsv");
        if synsets.is_file() {
            res.synsets = SynsetLexicon::from_file(&synsets).map_err(wrap_lex)?;
        }
        let wordforms = dir.join("wordforms.tsv");
        if wordforms.is_file() {
            res.wordforms = WordFormsDb::from_file(&wordforms).map_err(wrap_lex)?;
        }
        let reference = dir.join("reference_freqs.tsv");
        if reference.is_file() {
            res.reference = Some(FreqTable::from_file(&reference).map_err(wrap_text)?);
        }
        let html_dir = dir.join("html");
        res.fetcher = if html_dir.is_dir() {
            Some(Box::new(FixtureFetcher::new(html_dir)))
        } else {
            Some(Box::new(HttpFetcher::from_env()))
        };
        Ok(res)
    }

    /// Point the KB stage at an offline fixture directory.
    pub fn with_offline_kb(mut self, dir: impl Into<PathBuf>) -> Self {
        self.kb = Some(KbClient::offline(dir));
        self
    }
}

/// Entity types worth linking to a knowledge base.
const LINKABLE: [EntityType; 5] = [
    EntityType::Person,
    EntityType::Organization,
    EntityType::City,
    EntityType::Country,
    EntityType::Company,
];

/// Enrich one record. Never mutates its input; failures of individual
/// stages (URL fetch, KB transport) become warnings, not errors.
pub fn enrich(tweet: &TweetRecord, resources: &Resources) -> CurationRecord {
    let text = tweet.text.as_str();
    let profile = tweet.user.description.as_str();
    let mut warnings = Vec::new();

    // Keywords over the combined text, so shared terms count once.
    let combined = if profile.is_empty() {
        text.to_string()
    } else {
        format!("{text}\n{profile}")
    };
    let doc = Document::new(
        if tweet.id.is_empty() { "record" } else { &tweet.id },
        combined,
    );
    let keywords = extract_keywords(&doc, &resources.stopwords, resources.reference.as_ref());

    let mut entities = extract_entities(text, &resources.gazetteer);
    entities.extend(extract_entities(profile, &resources.gazetteer));

    let mut pos = tag_pos(text, &resources.pos_lexicon);
    pos.extend(tag_pos(profile, &resources.pos_lexicon));

    let mut stems: Vec<(String, String)> = Vec::new();
    for token in tokenize(text, &resources.stopwords)
        .into_iter()
        .chain(tokenize(profile, &resources.stopwords))
    {
        if stems.iter().any(|(t, _)| *t == token.surface) {
            continue;
        }
        if let Ok(stemmed) = stem(&token.surface) {
            stems.push((token.surface, stemmed));
        }
    }

    let mut synonyms = synonyms_text(text, &resources.synsets);
    for (word, syns) in synonyms_text(profile, &resources.synsets) {
        if !synonyms.iter().any(|(w, _)| *w == word) {
            synonyms.push((word, syns));
        }
    }

    let mut url_extracts = Vec::new();
    if !tweet.urls.is_empty() {
        match &resources.fetcher {
            Some(fetcher) => {
                for url in &tweet.urls {
                    match fetcher.fetch(url) {
                        Ok(body) => url_extracts.push(UrlExtract {
                            url: url.clone(),
                            extract: Some(extract_page(&parse_html(&body))),
                            error: None,
                        }),
                        Err(e) => {
                            let message = e.to_string();
                            warnings.push(format!("url {url}: {message}"));
                            url_extracts.push(UrlExtract {
                                url: url.clone(),
                                extract: None,
                                error: Some(message),
                            });
                        }
                    }
                }
            }
            None => warnings.push("no fetch capability configured; urls skipped".to_string()),
        }
    }

    let mut links = Vec::new();
    if let Some(kb) = &resources.kb {
        let mut seen = Vec::new();
        for entity in entities.iter().filter(|e| LINKABLE.contains(&e.ner)) {
            let mention = entity.word.clone();
            let key = mention.to_lowercase();
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            let looked_up = match resources.kb_provider {
                Provider::Wikidata => kb.lookup_wikidata(&mention),
                Provider::GoogleKg => kb.lookup_google_kg(&mention),
                Provider::ConceptNet => continue,
            };
            match looked_up {
                Ok(candidates) => {
                    match link_entity(
                        &mention,
                        &candidates,
                        resources.link_metric,
                        resources.link_threshold,
                    ) {
                        Ok(kept) => links.extend(kept),
                        Err(e) => warnings.push(format!("link {mention:?}: {e}")),
                    }
                }
                Err(crate::linking::LinkError::NotFound { .. }) => {}
                Err(e) => warnings.push(format!("kb lookup {mention:?}: {e}")),
            }
        }
    }

    CurationRecord {
        tweet: tweet.clone(),
        entities,
        keywords,
        pos,
        stems,
        synonyms,
        url_extracts,
        links,
        warnings,
    }
}
