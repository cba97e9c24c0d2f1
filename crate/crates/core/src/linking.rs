//! Knowledge-base clients (Wikidata, Google Knowledge Graph, ConceptNet)
//! and similarity-ranked entity linking.
//!
//! Clients run live over an injected transport, or offline against a
//! fixture directory (`<dir>/<provider>/<percent-encoded-query>.json`).
//! Offline mode never touches the transport.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::html::fixture_encode;
use crate::similarity::{jaro, levenshtein_normalized, soundex_sim};

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("transport error for {url}: {message}")]
    Transport { url: String, message: String },
    #[error("no result for {query:?} ({detail})")]
    NotFound { query: String, detail: String },
    #[error("unparseable response for {query:?}: {message}")]
    Format { query: String, message: String },
    #[error("{0}")]
    Argument(String),
}

/// The knowledge bases the toolkit can talk to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provider {
    Wikidata,
    GoogleKg,
    ConceptNet,
}

impl Provider {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provider::Wikidata => "wikidata",
            Provider::GoogleKg => "googlekg",
            Provider::ConceptNet => "conceptnet",
        }
    }
}

impl FromStr for Provider {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "wikidata" => Ok(Provider::Wikidata),
            "googlekg" | "gkg" | "google" => Ok(Provider::GoogleKg),
            "conceptnet" => Ok(Provider::ConceptNet),
            other => Err(format!("unknown provider {other:?}")),
        }
    }
}

impl fmt::Display for Provider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Live endpoints and keys, or the offline fixture directory.
#[derive(Debug, Clone)]
pub enum KbMode {
    Live,
    Offline(PathBuf),
}

#[derive(Debug, Clone)]
pub struct KbClientConfig {
    pub wikidata_url: String,
    pub gkg_url: String,
    pub conceptnet_url: String,
    pub gkg_key: Option<String>,
    pub timeout_ms: u64,
    pub mode: KbMode,
}

impl KbClientConfig {
    pub fn live() -> Self {
        KbClientConfig {
            wikidata_url: "https://www.wikidata.org/w/api.php".to_string(),
            gkg_url: "https://kgsearch.googleapis.com/v1/entities:search".to_string(),
            conceptnet_url: "https://api.conceptnet.io".to_string(),
            gkg_key: None,
            timeout_ms: 10_000,
            mode: KbMode::Live,
        }
    }

    pub fn offline(dir: impl Into<PathBuf>) -> Self {
        KbClientConfig {
            mode: KbMode::Offline(dir.into()),
            ..KbClientConfig::live()
        }
    }

    /// Apply `CURATA_WIKIDATA_URL`, `CURATA_GKG_URL`, `CURATA_GKG_KEY` and
    /// `CURATA_CONCEPTNET_URL` overrides.
    pub fn with_env_overrides(mut self) -> Self {
        if let Ok(url) = std::env::var("CURATA_WIKIDATA_URL") {
            self.wikidata_url = url;
        }
        if let Ok(url) = std::env::var("CURATA_GKG_URL") {
            self.gkg_url = url;
        }
        if let Ok(key) = std::env::var("CURATA_GKG_KEY") {
            self.gkg_key = Some(key);
        }
        if let Ok(url) = std::env::var("CURATA_CONCEPTNET_URL") {
            self.conceptnet_url = url;
        }
        self
    }
}

/// One entity returned by a knowledge base.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KbEntity {
    pub provider: Provider,
    pub id: String,
    pub label: String,
    pub description: Option<String>,
    pub url: Option<String>,
}

/// One ConceptNet edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptEdge {
    pub rel: String,
    pub start: String,
    pub end: String,
    pub weight: f64,
}

/// Raw GET capability, injected so tests can refuse network use.
pub trait Transport {
    fn get(&self, url: &str, timeout: Duration) -> Result<String, LinkError>;
}

/// Live HTTP transport.
#[derive(Debug, Default, Clone)]
pub struct HttpTransport;

impl Transport for HttpTransport {
    fn get(&self, url: &str, timeout: Duration) -> Result<String, LinkError> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .build()
            .into();
        agent
            .get(url)
            .call()
            .map_err(|e| LinkError::Transport {
                url: url.to_string(),
                message: e.to_string(),
            })?
            .body_mut()
            .read_to_string()
            .map_err(|e| LinkError::Transport {
                url: url.to_string(),
                message: e.to_string(),
            })
    }
}

/// A transport that fails on first use; offline tests assert zero network
/// operations with it.
#[derive(Debug, Default, Clone)]
pub struct FailTransport;

impl Transport for FailTransport {
    fn get(&self, url: &str, _timeout: Duration) -> Result<String, LinkError> {
        Err(LinkError::Transport {
            url: url.to_string(),
            message: "network use is forbidden in this configuration".to_string(),
        })
    }
}

/// Knowledge-base client bound to a config and a transport.
pub struct KbClient {
    cfg: KbClientConfig,
    transport: Box<dyn Transport + Send + Sync>,
}

impl fmt::Debug for KbClient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KbClient").field("cfg", &self.cfg).finish()
    }
}

impl KbClient {
    pub fn new(cfg: KbClientConfig, transport: Box<dyn Transport + Send + Sync>) -> Self {
        KbClient { cfg, transport }
    }

    /// Offline client over a fixture directory; any network use fails.
    pub fn offline(dir: impl Into<PathBuf>) -> Self {
        KbClient::new(KbClientConfig::offline(dir), Box::new(FailTransport))
    }

    /// Live client with environment overrides applied.
    pub fn live() -> Self {
        KbClient::new(
            KbClientConfig::live().with_env_overrides(),
            Box::new(HttpTransport),
        )
    }

    pub fn config(&self) -> &KbClientConfig {
        &self.cfg
    }

    fn raw(&self, provider: Provider, query: &str, live_url: String) -> Result<Value, LinkError> {
        let body = match &self.cfg.mode {
            KbMode::Offline(dir) => {
                let path = dir
                    .join(provider.as_str())
                    .join(format!("{}.json", fixture_encode(query)));
                std::fs::read_to_string(&path).map_err(|_| LinkError::NotFound {
                    query: query.to_string(),
                    detail: format!("no fixture at {}", path.display()),
                })?
            }
            KbMode::Live => self
                .transport
                .get(&live_url, Duration::from_millis(self.cfg.timeout_ms))?,
        };
        serde_json::from_str(&body).map_err(|e| LinkError::Format {
            query: query.to_string(),
            message: e.to_string(),
        })
    }

    /// Search Wikidata for entities matching `label`.
    pub fn lookup_wikidata(&self, label: &str) -> Result<Vec<KbEntity>, LinkError> {
        require_non_empty(label)?;
        let url = format!(
            "{}?action=wbsearchentities&format=json&language=en&search={}",
            self.cfg.wikidata_url,
            fixture_encode(label)
        );
        let value = self.raw(Provider::Wikidata, label, url)?;
        let results = value
            .get("search")
            .and_then(Value::as_array)
            .cloned()
            .unwrap_or_default();
        Ok(results
            .iter()
            .filter_map(|item| {
                Some(KbEntity {
                    provider: Provider::Wikidata,
                    id: item.get("id")?.as_str()?.to_string(),
                    label: string_at(item, &["label"])?,
                    description: string_at(item, &["description"]),
                    url: string_at(item, &["url"]),
                })
            })
            .collect())
    }

    /// Search the Google Knowledge Graph for entities matching `label`.
    pub fn lookup_google_kg(&self, label: &str) -> Result<Vec<KbEntity>, LinkError> {
        require_non_empty(label)?;
        let key = self.cfg.gkg_key.as_deref().unwrap_or("");
        let url = format!(
            "{}?query={}&limit=10&key={key}",
            self.cfg.gkg_url,
            fixture_encode(label)
        );
        let value = self.raw(Provider::GoogleKg, label, url)?;
        let items = value
            .get("itemListElement")
            .and_then(Value::as_array)
            .cloned()
            .unwrap_or_default();
        Ok(items
            .iter()
            .filter_map(|item| {
                let result = item.get("result")?;
                Some(KbEntity {
                    provider: Provider::GoogleKg,
                    id: result.get("@id")?.as_str()?.to_string(),
                    label: string_at(result, &["name"])?,
                    description: string_at(result, &["description"]),
                    url: result
                        .get("detailedDescription")
                        .and_then(|d| string_at(d, &["url"])),
                })
            })
            .collect())
    }

    fn conceptnet_raw(&self, query: &str) -> Result<Value, LinkError> {
        let url = format!(
            "{}/query?node=/c/en/{}",
            self.cfg.conceptnet_url,
            fixture_encode(&query.to_lowercase())
        );
        self.raw(Provider::ConceptNet, query, url)
    }

    fn parse_edges(value: &Value) -> Vec<ConceptEdge> {
        value
            .get("edges")
            .and_then(Value::as_array)
            .map(|edges| {
                edges
                    .iter()
                    .filter_map(|edge| {
                        Some(ConceptEdge {
                            rel: label_of(edge.get("rel")?)?,
                            start: label_of(edge.get("start")?)?,
                            end: label_of(edge.get("end")?)?,
                            weight: edge.get("weight").and_then(Value::as_f64).unwrap_or(1.0),
                        })
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// At most `count` edges touching `token`.
    pub fn conceptnet_lookup(&self, token: &str, count: usize) -> Result<Vec<ConceptEdge>, LinkError> {
        require_non_empty(token)?;
        if count < 1 {
            return Err(LinkError::Argument("count must be >= 1".to_string()));
        }
        let value = self.conceptnet_raw(token)?;
        let mut edges = Self::parse_edges(&value);
        edges.truncate(count);
        Ok(edges)
    }

    /// Concepts that are parts of `token` (tails of PartOf edges).
    pub fn conceptnet_part_of(&self, token: &str) -> Result<Vec<String>, LinkError> {
        require_non_empty(token)?;
        let value = self.conceptnet_raw(token)?;
        let token_lower = token.to_lowercase();
        Ok(Self::parse_edges(&value)
            .into_iter()
            .filter(|e| e.rel.eq_ignore_ascii_case("PartOf"))
            .filter(|e| e.end.to_lowercase() == token_lower)
            .map(|e| e.start)
            .collect())
    }

    /// Most similar concepts, weight descending.
    pub fn conceptnet_association(&self, token: &str) -> Result<Vec<(String, f64)>, LinkError> {
        require_non_empty(token)?;
        let value = self.conceptnet_raw(token)?;
        let mut related = parse_related(&value);
        if related.is_empty() {
            return Err(LinkError::NotFound {
                query: token.to_string(),
                detail: "no related concepts".to_string(),
            });
        }
        related.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
        Ok(related)
    }

    /// Most similar concepts to a group of tokens, weight descending.
    pub fn conceptnet_association_words(
        &self,
        tokens: &[&str],
    ) -> Result<Vec<(String, f64)>, LinkError> {
        if tokens.is_empty() {
            return Err(LinkError::Argument("tokens must be non-empty".to_string()));
        }
        self.conceptnet_association(&tokens.join(","))
    }
}

fn require_non_empty(query: &str) -> Result<(), LinkError> {
    if query.trim().is_empty() {
        return Err(LinkError::Argument("query must be non-empty".to_string()));
    }
    Ok(())
}

fn string_at(value: &Value, path: &[&str]) -> Option<String> {
    let mut cur = value;
    for key in path {
        cur = cur.get(key)?;
    }
    cur.as_str().map(str::to_string)
}

/// ConceptNet nodes carry labels either directly or under `label`.
fn label_of(value: &Value) -> Option<String> {
    value
        .get("label")
        .and_then(Value::as_str)
        .or_else(|| value.as_str())
        .map(str::to_string)
}

fn parse_related(value: &Value) -> Vec<(String, f64)> {
    value
        .get("related")
        .and_then(Value::as_array)
        .map(|items| {
            items
                .iter()
                .filter_map(|item| {
                    let concept = item
                        .get("@id")
                        .and_then(Value::as_str)
                        .map(|id| id.rsplit('/').next().unwrap_or(id).to_string())
                        .or_else(|| label_of(item))?;
                    let weight = item.get("weight").and_then(Value::as_f64).unwrap_or(0.0);
                    Some((concept, weight))
                })
                .collect()
        })
        .unwrap_or_default()
}

/// String metrics available to [`link_entity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkMetric {
    Jaro,
    LevenshteinNorm,
    Soundex,
}

impl FromStr for LinkMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "jaro" => Ok(LinkMetric::Jaro),
            "levenshtein_norm" | "levenshtein" => Ok(LinkMetric::LevenshteinNorm),
            "soundex" => Ok(LinkMetric::Soundex),
            other => Err(format!("unsupported link metric {other:?}")),
        }
    }
}

impl fmt::Display for LinkMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LinkMetric::Jaro => "jaro",
            LinkMetric::LevenshteinNorm => "levenshtein_norm",
            LinkMetric::Soundex => "soundex",
        };
        f.write_str(name)
    }
}

/// A candidate entity scored against the mention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkCandidate {
    pub mention: String,
    pub entity: KbEntity,
    pub score: f64,
    pub metric: String,
}

/// Score each candidate label against the mention and keep those with
/// score strictly above the threshold, sorted descending (stable for
/// ties, preserving provider order).
pub fn link_entity(
    mention: &str,
    candidates: &[KbEntity],
    metric: LinkMetric,
    threshold: f64,
) -> Result<Vec<LinkCandidate>, LinkError> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(LinkError::Argument(format!(
            "threshold must be in [0, 1], got {threshold}"
        )));
    }
    let mut scored: Vec<LinkCandidate> = candidates
        .iter()
        .map(|entity| {
            let score = match metric {
                LinkMetric::Jaro => jaro(mention, &entity.label),
                LinkMetric::LevenshteinNorm => levenshtein_normalized(mention, &entity.label, true),
                LinkMetric::Soundex => soundex_sim(mention, &entity.label).unwrap_or(0.0),
            };
            LinkCandidate {
                mention: mention.to_string(),
                entity: entity.clone(),
                score,
                metric: metric.to_string(),
            }
        })
        .filter(|c| c.score > threshold)
        .collect();
    scored.sort_by(|a, b| b.score.partial_cmp(&a.score).unwrap_or(std::cmp::Ordering::Equal));
    Ok(scored)
}
